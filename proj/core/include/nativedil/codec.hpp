#pragma once

#include <cstdint>
#include <span>

#include "nativedil/scheme.hpp"

namespace nativedil {

// Little-endian bit order: the first value occupies the low bits of byte 0.
class BitWriter {
 public:
  void write(u64 value, unsigned width);
  void write_bytes(std::span<const std::uint8_t> bytes);
  Bytes finish() &&;

 private:
  Bytes out_;
  u64 acc_ = 0;
  unsigned bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  // Throws TruncatedInput when the input runs out.
  u64 read(unsigned width);
  void read_bytes(std::span<std::uint8_t> out);
  // Throws NonCanonical unless the remaining bits of the current byte are
  // zero and no bytes are left over.
  void expect_end();

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  u64 acc_ = 0;
  unsigned bits_ = 0;
};

// File formats, version 1. Each file starts with a 4-byte magic, a version
// byte and the params-id byte.
//   public key: rho (32 bytes) || t at ceil(log2 q) bits per coefficient
//   secret key: rho || K (32 bytes) || s1, s2 as eta - c at ceil(log2(2 eta + 1)) bits
//               || t at ceil(log2 q) bits
//   signature:  z as (c mod+- q) + gamma1 - 1 at ceil(log2(2 gamma1)) bits
//               || tau pairs (position at log2 n bits, sign bit), positions increasing
enum class FileKind { PublicKey, SecretKey, Signature };

inline constexpr std::size_t kHeaderBytes = 6;
inline constexpr std::uint8_t kFormatVersion = 1;

// Validates magic and version and returns the params-id byte.
std::uint8_t read_params_id(std::span<const std::uint8_t> bytes, FileKind kind);

Bytes serialize_public_key(const PublicKey& pk, const ParameterSet& params);
Bytes serialize_secret_key(const SecretKey& sk, const ParameterSet& params);
Bytes serialize_signature(const Signature& sig, const ParameterSet& params);

PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes, const ParameterSet& params);
SecretKey deserialize_secret_key(std::span<const std::uint8_t> bytes, const ParameterSet& params);
Signature deserialize_signature(std::span<const std::uint8_t> bytes, const ParameterSet& params);

std::size_t public_key_bytes(const ParameterSet& params);
std::size_t secret_key_bytes(const ParameterSet& params);
std::size_t signature_bytes(const ParameterSet& params);

}  // namespace nativedil
