#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nativedil/estimator.hpp"
#include "nativedil/ring.hpp"

namespace nativedil {

// Hypotheses of the SelfTargetMSIS-to-MLWE reduction for
// SelfTargetMSIS_{m,k,gamma} and MLWE_{m+k,m,eta}.
struct TheoremHypotheses {
  bool q_at_least_16 = false;
  bool q_one_mod_2n = false;
  bool norm_bound = false;  // 2 gamma eta n (m + k) < floor(q/32)
  BigInt lhs;
  u64 rhs = 0;

  bool all() const noexcept { return q_at_least_16 && q_one_mod_2n && norm_bound; }
};

TheoremHypotheses check_theorem_hypotheses(u64 q, u64 n, u64 m, u64 k, u64 gamma, u64 eta);

// Partition of Z_q into t buckets I_0..I_{t-1}: the first t-1 hold floor(q/t)
// consecutive residues, the last one absorbs the remainder.
class RoundingSpec {
 public:
  RoundingSpec(u64 q, u64 t);

  u64 q() const noexcept { return q_; }
  u64 t() const noexcept { return t_; }
  u64 width() const noexcept { return q_ / t_; }
  u64 bucket_size(u64 j) const noexcept { return j + 1 < t_ ? width() : q_ - (t_ - 1) * width(); }
  // Half-open residue range [first, last + 1) of bucket j.
  u64 bucket_first(u64 j) const noexcept { return j * width(); }

 private:
  u64 q_;
  u64 t_;
};

u64 round_t(u64 a, const RoundingSpec& spec);

// Pr[round(u) = round(u + v)] for uniform u, v in Z_q. The closed form and the
// pair enumeration are independent routes to the same rational.
// Both throw PreconditionViolated unless t^2 <= q.
Rational p_t_exact(const RoundingSpec& spec);
Rational p_t_bruteforce(const RoundingSpec& spec);

struct UniformityResult {
  bool pass = false;
  u64 expected_count = 0;  // q^(nl - 1)
  u64 min_count = 0;
  u64 max_count = 0;
};

inline constexpr u64 kEnumerationCap = u64{1} << 24;

// Enumerates every b in R_q^l and tallies coefficient `index` of <b, delta>.
// Throws TooLarge when q^(nl) > 2^24 and PreconditionViolated for delta = 0.
UniformityResult uniformity_check(const RingContext& ctx, std::size_t l, const RingVector& delta, std::size_t index);

enum class SweepMode { Full, Sampled };

struct UniformitySweep {
  SweepMode mode = SweepMode::Full;
  u64 deltas_checked = 0;
  u64 deltas_passed = 0;
  double operation_estimate = 0;
  bool pass() const noexcept { return deltas_checked > 0 && deltas_checked == deltas_passed; }
};

// Full sweep over all nonzero delta when the estimated work (nonzero deltas
// times q^(nl)) stays below kFullSweepBudget, otherwise `samples` random
// nonzero deltas drawn from a stream seeded by `seed`.
inline constexpr double kFullSweepBudget = 8589934592.0;  // 2^33

UniformitySweep uniformity_sweep(const RingContext& ctx, std::size_t l, std::size_t index, u64 samples = 100,
                                 std::uint64_t seed = 1, bool force_sampled = false);

// Sum_{j<n} w^(2mj) mod q for the context's primitive 2n-th root w.
u64 primitive_power_sum(const RingContext& ctx, i64 m);

// Transforms by their matrix definitions (O(n^2)).
RingElement phi_matrix(const RingContext& ctx, const RingElement& a);
RingElement phi_inverse_matrix(const RingContext& ctx, const RingElement& c);

struct IsomorphismResult {
  u64 elements_checked = 0;
  bool roundtrip = false;        // phi' o phi = id and phi o phi' = id on all of R_q
  bool ntt_matches_matrix = false;
  u64 pairs_checked = 0;
  bool homomorphism = false;     // phi(ab) = phi(a) * phi(b) on random pairs
  bool primitive_sums = false;   // sums vanish for all 0 < |m| < n
  bool pass() const noexcept { return roundtrip && ntt_matches_matrix && homomorphism && primitive_sums; }
};

// Throws TooLarge when q^n > 2^24.
IsomorphismResult isomorphism_exhaustive(const RingContext& ctx, u64 random_pairs = 10000, std::uint64_t seed = 1);

}  // namespace nativedil
