#pragma once

#include <cstdint>
#include <vector>

namespace nativedil {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;

// Arithmetic modulo an odd q < 2^62. Products are reduced with Montgomery's
// method; all public inputs and outputs are canonical residues in [0, q).
class Modulus {
 public:
  static constexpr u64 kMaxModulus = u64{1} << 62;

  explicit Modulus(u64 q);

  u64 value() const noexcept { return q_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : q_ - a; }

  u64 mul(u64 a, u64 b) const noexcept {
    return redc(static_cast<u128>(redc(static_cast<u128>(a) * b)) * r2_);
  }

  // Precomputed companion for repeated multiplication by a fixed w.
  u64 shoup(u64 w) const noexcept { return static_cast<u64>((static_cast<u128>(w) << 64) / q_); }
  u64 mul_shoup(u64 a, u64 w, u64 w_shoup) const noexcept {
    u64 quot = static_cast<u64>((static_cast<u128>(a) * w_shoup) >> 64);
    u64 r = a * w - quot * q_;
    return r >= q_ ? r - q_ : r;
  }

  u64 pow(u64 base, u64 exp) const noexcept;
  // Requires a != 0 (q prime).
  u64 inv(u64 a) const noexcept { return pow(a, q_ - 2); }

  // Reduces a signed integer into [0, q).
  u64 from_signed(i64 v) const noexcept {
    i64 r = v % static_cast<i64>(q_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
  }

 private:
  u64 redc(u128 t) const noexcept {
    u64 m = static_cast<u64>(t) * q_neg_inv_;
    u64 r = static_cast<u64>((t + static_cast<u128>(m) * q_) >> 64);
    return r >= q_ ? r - q_ : r;
  }

  u64 q_;
  u64 q_neg_inv_;  // -q^{-1} mod 2^64
  u64 r2_;         // 2^128 mod q
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

// Distinct prime factors of n in ascending order (trial division).
std::vector<u64> prime_factors(u64 n);

// Smallest generator of the multiplicative group of Z_q for prime q.
u64 smallest_generator(u64 q);

bool is_power_of_two(u64 n) noexcept;
unsigned log2_exact(u64 n) noexcept;
// Number of bits needed to represent values in [0, n): ceil(log2 n), 0 for n <= 1.
unsigned ceil_log2(u64 n) noexcept;

}  // namespace nativedil
