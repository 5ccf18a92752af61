#pragma once

#include <optional>

#include "nativedil/estimator.hpp"

namespace nativedil {

// Counts of Z_q multiplications and additions.
struct CostPair {
  u64 mults = 0;
  u64 adds = 0;
  friend bool operator==(const CostPair&, const CostPair&) = default;
};

// One ring multiplication through the NTT: 3/2 n log n + 2n mults, 3 n log n adds.
// Throws NotPowerOfTwo unless n >= 2 is a power of two.
CostPair ntt_mul_cost(u64 n);

// Hybrid NTT with split parameters (a, b), evaluated exactly.
// Throws NonIntegralCost when either count is not an integer.
CostPair hntt_mul_cost(u64 n, unsigned a, unsigned b);

// Whether q = 1 mod n / 2^(a+b-1), with that quotient a positive integer.
bool hntt_admissible(u64 q, u64 n, unsigned a, unsigned b) noexcept;

struct HnttChoice {
  unsigned a;
  unsigned b;
  CostPair cost;
};

// Admissible (a, b) minimising (mults, adds); nullopt if none.
std::optional<HnttChoice> best_hntt(u64 q, u64 n);

// Ring-level operation counts per algorithm for r signing repeats.
struct PhaseCounts {
  Rational gen;
  Rational sign;
  Rational verify;
};

struct RingOpCounts {
  PhaseCounts mults;
  PhaseCounts adds;
};

RingOpCounts scheme_ring_op_counts(u64 k, u64 l, const Rational& r);

struct OpTable {
  CostPair gen;
  CostPair sign;
  CostPair verify;
  Rational repeats;  // the r that was used, two decimals
};

// Expected repeats rounded to two decimals, as an exact rational.
Rational repeats_two_decimals(const ParameterSet& params);

// Z_q operation totals: ring mults cost `cost` each, ring adds cost n
// additions each; totals rounded to the nearest integer (halves up).
OpTable zq_op_table(const ParameterSet& params, const CostPair& cost, const Rational& r);
OpTable zq_op_table(const ParameterSet& params, const CostPair& cost);

}  // namespace nativedil
