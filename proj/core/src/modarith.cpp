#include "nativedil/modarith.hpp"

#include <bit>

#include "nativedil/error.hpp"

namespace nativedil {

Modulus::Modulus(u64 q) : q_(q) {
  if (q < 3 || q % 2 == 0 || q >= kMaxModulus) {
    throw Error(ErrorCode::BadParams, "modulus must be odd and in [3, 2^62)");
  }
  // Newton iteration for q^{-1} mod 2^64.
  u64 inv = q;
  for (int i = 0; i < 6; ++i) {
    inv *= 2 - q * inv;
  }
  q_neg_inv_ = ~inv + 1;
  u128 r = (static_cast<u128>(1) << 64) % q;
  r2_ = static_cast<u64>((r * r) % q);
}

u64 Modulus::pow(u64 base, u64 exp) const noexcept {
  u64 result = 1 % q_;
  base %= q_;
  while (exp != 0) {
    if (exp & 1) {
      result = mul(result, base);
    }
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) {
      r = mulmod(r, a, m);
    }
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) {
    return false;
  }
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) {
      return n == p;
    }
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) {
      continue;
    }
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) {
      return false;
    }
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> factors;
  if (n < 2) {
    return factors;
  }
  if (n % 2 == 0) {
    factors.push_back(2);
    while (n % 2 == 0) {
      n /= 2;
    }
  }
  if (n > 1 && is_prime(n)) {
    factors.push_back(n);
    return factors;
  }
  for (u64 p = 3; p <= n / p; p += 2) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) {
        n /= p;
      }
      if (n > 1 && is_prime(n)) {
        break;
      }
    }
  }
  if (n > 1) {
    factors.push_back(n);
  }
  return factors;
}

u64 smallest_generator(u64 q) {
  if (!is_prime(q)) {
    throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  }
  if (q == 2) {
    return 1;
  }
  const auto factors = prime_factors(q - 1);
  for (u64 g = 2; g < q; ++g) {
    bool generator = true;
    for (u64 p : factors) {
      if (powmod(g, (q - 1) / p, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) {
      return g;
    }
  }
  throw Error(ErrorCode::NotPrime, "no generator found");
}

bool is_power_of_two(u64 n) noexcept { return std::has_single_bit(n); }

unsigned log2_exact(u64 n) noexcept { return static_cast<unsigned>(std::countr_zero(n)); }

unsigned ceil_log2(u64 n) noexcept {
  if (n <= 1) {
    return 0;
  }
  return static_cast<unsigned>(std::bit_width(n - 1));
}

}  // namespace nativedil
