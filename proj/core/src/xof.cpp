#include "nativedil/xof.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <string>

#include "nativedil/error.hpp"

namespace nativedil {

namespace {

constexpr std::string_view kDomain = "nativedil.xof.v1";

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

MdCtxPtr new_shake_ctx() {
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1) {
    throw std::runtime_error("SHAKE256 initialisation failed");
  }
  return ctx;
}

void absorb(EVP_MD_CTX* ctx, const void* data, std::size_t len) {
  if (EVP_DigestUpdate(ctx, data, len) != 1) {
    throw std::runtime_error("SHAKE256 update failed");
  }
}

void append_le(Bytes& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

}  // namespace

Bytes shake256(std::span<const std::uint8_t> input, std::size_t out_len) {
  auto ctx = new_shake_ctx();
  absorb(ctx.get(), input.data(), input.size());
  Bytes out(out_len);
  if (EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw std::runtime_error("SHAKE256 finalisation failed");
  }
  return out;
}

struct XofStream::Absorbed {
  MdCtxPtr ctx;
  MdCtxPtr scratch;
};

XofStream::XofStream(std::span<const std::uint8_t> seed, std::span<const std::uint8_t> tag)
    : absorbed_(std::make_unique<Absorbed>()) {
  absorbed_->ctx = new_shake_ctx();
  absorbed_->scratch = MdCtxPtr(EVP_MD_CTX_new());
  if (!absorbed_->scratch) {
    throw std::runtime_error("EVP_MD_CTX_new failed");
  }
  Bytes header(kDomain.begin(), kDomain.end());
  append_le(header, tag.size(), 2);
  absorb(absorbed_->ctx.get(), header.data(), header.size());
  absorb(absorbed_->ctx.get(), tag.data(), tag.size());
  Bytes seed_len;
  append_le(seed_len, seed.size(), 4);
  absorb(absorbed_->ctx.get(), seed_len.data(), seed_len.size());
  absorb(absorbed_->ctx.get(), seed.data(), seed.size());
}

XofStream::XofStream(std::span<const std::uint8_t> seed, std::string_view tag)
    : XofStream(seed, std::span<const std::uint8_t>(
                          reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size())) {}

XofStream::~XofStream() = default;
XofStream::XofStream(XofStream&&) noexcept = default;
XofStream& XofStream::operator=(XofStream&&) noexcept = default;

void XofStream::refill() {
  if (counter_ == UINT64_MAX) {
    throw Error(ErrorCode::StreamExhausted, "stream block counter overflow");
  }
  EVP_MD_CTX* scratch = absorbed_->scratch.get();
  if (EVP_MD_CTX_copy_ex(scratch, absorbed_->ctx.get()) != 1) {
    throw std::runtime_error("SHAKE256 state copy failed");
  }
  Bytes counter;
  append_le(counter, counter_++, 8);
  absorb(scratch, counter.data(), counter.size());
  if (EVP_DigestFinalXOF(scratch, block_.data(), block_.size()) != 1) {
    throw std::runtime_error("SHAKE256 finalisation failed");
  }
  pos_ = 0;
}

std::uint8_t XofStream::next_byte() {
  if (pos_ == block_.size()) {
    refill();
  }
  return block_[pos_++];
}

void XofStream::read(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    b = next_byte();
  }
}

std::uint64_t XofStream::read_bits(unsigned width) {
  while (bit_count_ < width) {
    bit_buffer_ |= static_cast<std::uint64_t>(next_byte()) << bit_count_;
    bit_count_ += 8;
  }
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  const std::uint64_t v = bit_buffer_ & mask;
  bit_buffer_ = width >= 64 ? 0 : bit_buffer_ >> width;
  bit_count_ -= width;
  return v;
}

Bytes make_tag(std::string_view label) { return Bytes(label.begin(), label.end()); }

Bytes make_tag(std::string_view label, std::uint32_t a) {
  Bytes tag = make_tag(label);
  append_le(tag, a, 4);
  return tag;
}

Bytes make_tag(std::string_view label, std::uint32_t a, std::uint32_t b) {
  Bytes tag = make_tag(label, a);
  append_le(tag, b, 4);
  return tag;
}

}  // namespace nativedil
