#include "nativedil/opcounts.hpp"

#include <cmath>
#include <tuple>

#include "nativedil/error.hpp"

namespace nativedil {

namespace {

// 2^e for possibly negative e.
Rational pow2(int e) {
  if (e >= 0) {
    return Rational(BigInt(1) << e);
  }
  return Rational(BigInt(1), BigInt(1) << -e);
}

u64 to_integer(const Rational& v, const char* what) {
  if (v < 0 || denominator(v) != 1) {
    throw Error(ErrorCode::NonIntegralCost, std::string(what) + " is not a non-negative integer");
  }
  return static_cast<u64>(numerator(v));
}

u64 round_half_up(const Rational& v) {
  const BigInt twice = numerator(v) * 2 + denominator(v);
  return static_cast<u64>(twice / (denominator(v) * 2));
}

void check_n(u64 n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw Error(ErrorCode::NotPowerOfTwo, "n must be a power of two >= 2");
  }
}

}  // namespace

CostPair ntt_mul_cost(u64 n) {
  check_n(n);
  const u64 log_n = log2_exact(n);
  return {3 * n * log_n / 2 + 2 * n, 3 * n * log_n};
}

CostPair hntt_mul_cost(u64 n, unsigned a, unsigned b) {
  check_n(n);
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const Rational nr(n);
  const Rational nlog(BigInt(n) * log2_exact(n));
  const Rational m_coeff = 3 * pow2(ia + ib - 3) + pow2(ia - 2) + 3 * pow2(ib - 3) + pow2(ia - ib - 2) -
                           Rational(3, 2) * (ia + ib) + Rational(5, 4);
  const Rational a_coeff =
      5 * pow2(ia + ib - 2) + 5 * pow2(ib - 2) + 5 * pow2(ia - 2) - 3 * (ia + ib) - Rational(15, 4);
  const Rational mults = Rational(3, 2) * nlog + m_coeff * nr;
  const Rational adds = 3 * nlog + a_coeff * nr;
  return {to_integer(mults, "H-NTT multiplication count"), to_integer(adds, "H-NTT addition count")};
}

bool hntt_admissible(u64 q, u64 n, unsigned a, unsigned b) noexcept {
  if (n < 2 || !is_power_of_two(n) || a + b == 0) {
    return false;
  }
  const unsigned shift = a + b - 1;
  if (shift > log2_exact(n)) {
    return false;
  }
  const u64 m = n >> shift;
  return (q - 1) % m == 0;
}

std::optional<HnttChoice> best_hntt(u64 q, u64 n) {
  if (n < 2 || !is_power_of_two(n)) {
    return std::nullopt;
  }
  const unsigned max_sum = log2_exact(n) + 1;
  std::optional<HnttChoice> best;
  for (unsigned a = 0; a <= max_sum; ++a) {
    for (unsigned b = 0; a + b <= max_sum; ++b) {
      if (!hntt_admissible(q, n, a, b)) {
        continue;
      }
      CostPair c;
      try {
        c = hntt_mul_cost(n, a, b);
      } catch (const Error&) {
        continue;
      }
      if (!best || std::tie(c.mults, c.adds) < std::tie(best->cost.mults, best->cost.adds)) {
        best = HnttChoice{a, b, c};
      }
    }
  }
  return best;
}

RingOpCounts scheme_ring_op_counts(u64 k, u64 l, const Rational& r) {
  const Rational kl(k * l);
  RingOpCounts c;
  c.mults = {kl, Rational(k * l + k + l) * r, Rational(k * l + k)};
  c.adds = {kl, Rational(k * l + l) * r, kl};
  return c;
}

Rational repeats_two_decimals(const ParameterSet& params) {
  return Rational(static_cast<i64>(std::llround(expected_repeats(params) * 100.0)), 100);
}

OpTable zq_op_table(const ParameterSet& params, const CostPair& cost, const Rational& r) {
  const RingOpCounts ring = scheme_ring_op_counts(params.k, params.l, r);
  const Rational cm(cost.mults);
  const Rational ca(cost.adds);
  const Rational n(params.n);
  auto phase = [&](const Rational& mul, const Rational& add) {
    return CostPair{round_half_up(mul * cm), round_half_up(mul * ca + add * n)};
  };
  OpTable t;
  t.gen = phase(ring.mults.gen, ring.adds.gen);
  t.sign = phase(ring.mults.sign, ring.adds.sign);
  t.verify = phase(ring.mults.verify, ring.adds.verify);
  t.repeats = r;
  return t;
}

OpTable zq_op_table(const ParameterSet& params, const CostPair& cost) {
  return zq_op_table(params, cost, repeats_two_decimals(params));
}

}  // namespace nativedil
