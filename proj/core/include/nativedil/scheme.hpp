#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nativedil/params.hpp"
#include "nativedil/ring.hpp"

namespace nativedil {

using Seed = std::array<std::uint8_t, 32>;

struct Decomposition {
  u64 high;
  i64 low;
};

// r = alpha * high + low (mod q) with |low| <= alpha/2 and 0 <= high < (q-1)/alpha.
// Requires alpha even and alpha | q - 1 (BadParams otherwise).
Decomposition decompose(u64 r, u64 alpha, u64 q);

RingVector high_bits(const RingContext& ctx, const RingVector& v, u64 alpha);
// Low parts re-encoded as residues mod q.
RingVector low_bits(const RingContext& ctx, const RingVector& v, u64 alpha);

class RingMatrix {
 public:
  RingMatrix(std::size_t rows, std::size_t cols, std::size_t n)
      : rows_(rows), cols_(cols), entries_(rows * cols, RingElement(n)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  RingElement& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const RingElement& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> entries_;
};

// Entry (i, j) is sample_uniform_ring over XofStream(rho, "A" || i || j).
RingMatrix expand_a(const RingContext& ctx, std::span<const std::uint8_t> rho, const ParameterSet& params);

// Matrix-vector product computed in the NTT domain.
RingVector mat_vec_mul(const RingContext& ctx, const RingMatrix& a, const RingVector& v);

// Uniform element of B_tau: inside-out Fisher-Yates over XofStream(seed, "ball").
RingElement sample_in_ball(std::span<const std::uint8_t> seed, const RingContext& ctx, u64 tau);

// H : {0,1}* -> B_tau. SHAKE256 digest of the input (64 bytes) fed to sample_in_ball.
RingElement hash_to_challenge(std::span<const std::uint8_t> input, const RingContext& ctx, u64 tau);

bool in_ball(const RingContext& ctx, const RingElement& c, u64 tau);

// High parts packed at ceil(log2((q-1)/(2 gamma2))) bits each, little-endian bit order.
Bytes pack_w1(const RingVector& w1, const ParameterSet& params);

struct PublicKey {
  Seed rho{};
  RingVector t;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  Seed rho{};
  Seed key{};
  RingVector s1;
  RingVector s2;
  RingVector t;
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Signature {
  RingVector z;
  RingElement c;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignResult {
  Signature signature;
  std::uint32_t attempts;
};

// Checks the conditions the signing algorithm needs (prime q with an NTT,
// 2 gamma2 | q - 1, q > 4 gamma2, beta = tau eta, gamma1, gamma2 > beta, tau <= n).
// Throws BadParams naming the first violated condition.
void check_scheme_params(const ParameterSet& params);

// The simplified Fiat-Shamir-with-aborts scheme bound to one parameter set.
// Immutable after construction; all operations are deterministic in their inputs.
class Scheme {
 public:
  static constexpr std::uint32_t kDefaultMaxAttempts = 1024;

  explicit Scheme(ParameterSet params);

  const ParameterSet& params() const noexcept { return params_; }
  const RingContext& ring() const noexcept { return ring_; }

  KeyPair keygen(std::span<const std::uint8_t, 32> seed) const;
  SignResult sign(const SecretKey& sk, std::span<const std::uint8_t> message,
                  std::uint32_t max_attempts = kDefaultMaxAttempts) const;
  bool verify(const PublicKey& pk, std::span<const std::uint8_t> message, const Signature& sig) const;

 private:
  ParameterSet params_;
  RingContext ring_;
};

}  // namespace nativedil
