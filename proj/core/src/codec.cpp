#include "nativedil/codec.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "nativedil/error.hpp"

namespace nativedil {

namespace {

constexpr std::array<std::uint8_t, 4> kPublicKeyMagic = {'N', 'D', 'P', 'K'};
constexpr std::array<std::uint8_t, 4> kSecretKeyMagic = {'N', 'D', 'S', 'K'};
constexpr std::array<std::uint8_t, 4> kSignatureMagic = {'N', 'D', 'S', 'G'};

const std::array<std::uint8_t, 4>& magic_for(FileKind kind) {
  switch (kind) {
    case FileKind::PublicKey:
      return kPublicKeyMagic;
    case FileKind::SecretKey:
      return kSecretKeyMagic;
    case FileKind::Signature:
      break;
  }
  return kSignatureMagic;
}

void write_header(BitWriter& w, FileKind kind, const ParameterSet& params) {
  w.write_bytes(magic_for(kind));
  w.write(kFormatVersion, 8);
  w.write(params_id_of(params), 8);
}

BitReader open(std::span<const std::uint8_t> bytes, FileKind kind, const ParameterSet& params) {
  const std::uint8_t id = read_params_id(bytes, kind);
  if (id != params_id_of(params)) {
    throw Error(ErrorCode::BadParamsId, "file params-id " + std::to_string(id) +
                                            " does not match parameter set '" + params.name + "'");
  }
  return BitReader(bytes.subspan(kHeaderBytes));
}

std::size_t bytes_for_bits(std::size_t bits) { return (bits + 7) / 8; }

void write_full(BitWriter& w, const RingVector& v, unsigned width) {
  for (const auto& e : v) {
    for (u64 c : e.coeffs()) {
      w.write(c, width);
    }
  }
}

RingVector read_full(BitReader& r, std::size_t len, const ParameterSet& p) {
  const unsigned width = ceil_log2(p.q);
  RingVector v(len, p.n);
  for (auto& e : v) {
    for (auto& c : e.coeffs()) {
      c = r.read(width);
      if (c >= p.q) {
        throw Error(ErrorCode::NonCanonical, "coefficient not reduced mod q");
      }
    }
  }
  return v;
}

void write_short(BitWriter& w, const RingVector& v, const ParameterSet& p) {
  const unsigned width = ceil_log2(2 * p.eta + 1);
  for (const auto& e : v) {
    for (u64 c : e.coeffs()) {
      const i64 centered = mod_pm(c, p.q);
      if (centered > static_cast<i64>(p.eta) || centered < -static_cast<i64>(p.eta)) {
        throw Error(ErrorCode::NonCanonical, "secret coefficient exceeds eta");
      }
      w.write(static_cast<u64>(static_cast<i64>(p.eta) - centered), width);
    }
  }
}

RingVector read_short(BitReader& r, std::size_t len, const ParameterSet& p) {
  const unsigned width = ceil_log2(2 * p.eta + 1);
  RingVector v(len, p.n);
  for (auto& e : v) {
    for (auto& c : e.coeffs()) {
      const u64 raw = r.read(width);
      if (raw > 2 * p.eta) {
        throw Error(ErrorCode::NonCanonical, "secret coefficient out of range");
      }
      const i64 centered = static_cast<i64>(p.eta) - static_cast<i64>(raw);
      c = centered < 0 ? p.q - static_cast<u64>(-centered) : static_cast<u64>(centered);
    }
  }
  return v;
}

}  // namespace

void BitWriter::write(u64 value, unsigned width) {
  if (width < 64) {
    value &= (u64{1} << width) - 1;
  }
  acc_ |= value << bits_;
  bits_ += width;
  while (bits_ >= 8) {
    out_.push_back(static_cast<std::uint8_t>(acc_));
    acc_ >>= 8;
    bits_ -= 8;
  }
}

void BitWriter::write_bytes(std::span<const std::uint8_t> bytes) {
  for (auto b : bytes) {
    write(b, 8);
  }
}

Bytes BitWriter::finish() && {
  if (bits_ > 0) {
    out_.push_back(static_cast<std::uint8_t>(acc_));
  }
  return std::move(out_);
}

u64 BitReader::read(unsigned width) {
  while (bits_ < width) {
    if (pos_ == in_.size()) {
      throw Error(ErrorCode::TruncatedInput, "input ended early");
    }
    acc_ |= static_cast<u64>(in_[pos_++]) << bits_;
    bits_ += 8;
  }
  const u64 v = width == 0 ? 0 : acc_ & ((u64{1} << width) - 1);
  acc_ = width >= 64 ? 0 : acc_ >> width;
  bits_ -= width;
  return v;
}

void BitReader::read_bytes(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    b = static_cast<std::uint8_t>(read(8));
  }
}

void BitReader::expect_end() {
  if (acc_ != 0) {
    throw Error(ErrorCode::NonCanonical, "nonzero padding bits");
  }
  if (pos_ != in_.size()) {
    throw Error(ErrorCode::NonCanonical, "trailing bytes after payload");
  }
}

std::uint8_t read_params_id(std::span<const std::uint8_t> bytes, FileKind kind) {
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::TruncatedInput, "file shorter than its header");
  }
  const auto& magic = magic_for(kind);
  if (!std::equal(magic.begin(), magic.end(), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "unexpected file magic");
  }
  if (bytes[4] != kFormatVersion) {
    throw Error(ErrorCode::BadMagic, "unsupported format version " + std::to_string(bytes[4]));
  }
  return bytes[5];
}

Bytes serialize_public_key(const PublicKey& pk, const ParameterSet& params) {
  BitWriter w;
  write_header(w, FileKind::PublicKey, params);
  w.write_bytes(pk.rho);
  write_full(w, pk.t, ceil_log2(params.q));
  return std::move(w).finish();
}

Bytes serialize_secret_key(const SecretKey& sk, const ParameterSet& params) {
  BitWriter w;
  write_header(w, FileKind::SecretKey, params);
  w.write_bytes(sk.rho);
  w.write_bytes(sk.key);
  write_short(w, sk.s1, params);
  write_short(w, sk.s2, params);
  write_full(w, sk.t, ceil_log2(params.q));
  return std::move(w).finish();
}

Bytes serialize_signature(const Signature& sig, const ParameterSet& params) {
  BitWriter w;
  write_header(w, FileKind::Signature, params);
  const unsigned z_width = ceil_log2(2 * params.gamma1);
  const i64 offset = static_cast<i64>(params.gamma1) - 1;
  for (const auto& e : sig.z) {
    for (u64 c : e.coeffs()) {
      const i64 centered = mod_pm(c, params.q);
      if (centered < -offset || centered > offset) {
        throw Error(ErrorCode::NonCanonical, "z coefficient outside (-gamma1, gamma1)");
      }
      w.write(static_cast<u64>(centered + offset), z_width);
    }
  }
  const unsigned pos_width = ceil_log2(params.n);
  u64 weight = 0;
  for (std::size_t i = 0; i < sig.c.size(); ++i) {
    if (sig.c[i] == 0) {
      continue;
    }
    if (sig.c[i] != 1 && sig.c[i] != params.q - 1) {
      throw Error(ErrorCode::NonCanonical, "challenge coefficient is not 0 or +-1");
    }
    w.write(i, pos_width);
    w.write(sig.c[i] == 1 ? 0 : 1, 1);
    ++weight;
  }
  if (weight != params.tau) {
    throw Error(ErrorCode::NonCanonical, "challenge weight differs from tau");
  }
  return std::move(w).finish();
}

PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes, const ParameterSet& params) {
  BitReader r = open(bytes, FileKind::PublicKey, params);
  PublicKey pk;
  r.read_bytes(pk.rho);
  pk.t = read_full(r, params.k, params);
  r.expect_end();
  return pk;
}

SecretKey deserialize_secret_key(std::span<const std::uint8_t> bytes, const ParameterSet& params) {
  BitReader r = open(bytes, FileKind::SecretKey, params);
  SecretKey sk;
  r.read_bytes(sk.rho);
  r.read_bytes(sk.key);
  sk.s1 = read_short(r, params.l, params);
  sk.s2 = read_short(r, params.k, params);
  sk.t = read_full(r, params.k, params);
  r.expect_end();
  return sk;
}

Signature deserialize_signature(std::span<const std::uint8_t> bytes, const ParameterSet& params) {
  BitReader r = open(bytes, FileKind::Signature, params);
  Signature sig;
  const unsigned z_width = ceil_log2(2 * params.gamma1);
  const u64 max_raw = 2 * params.gamma1 - 2;
  const i64 offset = static_cast<i64>(params.gamma1) - 1;
  sig.z = RingVector(params.l, params.n);
  for (auto& e : sig.z) {
    for (auto& c : e.coeffs()) {
      const u64 raw = r.read(z_width);
      if (raw > max_raw) {
        throw Error(ErrorCode::NonCanonical, "z coefficient out of range");
      }
      const i64 centered = static_cast<i64>(raw) - offset;
      c = centered < 0 ? params.q - static_cast<u64>(-centered) : static_cast<u64>(centered);
    }
  }
  const unsigned pos_width = ceil_log2(params.n);
  sig.c = RingElement(params.n);
  u64 previous = 0;
  for (u64 i = 0; i < params.tau; ++i) {
    const u64 pos = r.read(pos_width);
    const u64 negative = r.read(1);
    if (pos >= params.n || (i > 0 && pos <= previous)) {
      throw Error(ErrorCode::NonCanonical, "challenge positions must be strictly increasing");
    }
    sig.c[pos] = negative ? params.q - 1 : 1;
    previous = pos;
  }
  r.expect_end();
  return sig;
}

std::size_t public_key_bytes(const ParameterSet& p) {
  return kHeaderBytes + 32 + bytes_for_bits(p.k * p.n * ceil_log2(p.q));
}

std::size_t secret_key_bytes(const ParameterSet& p) {
  const std::size_t bits =
      (p.k + p.l) * p.n * ceil_log2(2 * p.eta + 1) + p.k * p.n * ceil_log2(p.q);
  return kHeaderBytes + 64 + bytes_for_bits(bits);
}

std::size_t signature_bytes(const ParameterSet& p) {
  const std::size_t bits = p.l * p.n * ceil_log2(2 * p.gamma1) + p.tau * (ceil_log2(p.n) + 1);
  return kHeaderBytes + bytes_for_bits(bits);
}

}  // namespace nativedil
