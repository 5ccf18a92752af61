#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nativedil/params.hpp"

namespace nativedil {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// How the primal-attack inequality reads the error parameter: the uniform
// bound itself, or the standard deviation sqrt(e(e+1)/3) of the uniform
// distribution on [-e, e]. The bound reproduces the published block sizes.
enum class ErrorModel { UniformBound, StandardDeviation };

struct AttackModel {
  // Quantum Core-SVP cost exponent 0.265, kept as an exact fraction.
  static constexpr unsigned kCoreSvpMilli = 265;
  // log2 of the query bound B_l for NIST levels 1..5.
  static constexpr std::array<unsigned, 5> kQueryBoundLog2 = {64, 86, 96, 128, 128};

  unsigned mu_min = 50;
  unsigned mu_max = 1u << 15;
  ErrorModel primal_error = ErrorModel::UniformBound;

  static unsigned query_bound_log2(int level);
};

// Root-Hermite factor of BKZ with block size mu. Throws DomainError for mu < 2.
double delta(unsigned mu);

// floor(0.265 mu), exactly.
unsigned core_svp(unsigned mu) noexcept;

// The defining inequalities at a given block size. na, nb are the LWE/SIS
// dimensions n*a, n*b; eps the error bound; xi the infinity-norm bound.
bool primal_condition(u64 na, u64 nb, u64 eps, u64 q, unsigned mu, ErrorModel model = ErrorModel::UniformBound);
bool dual_condition(u64 na, u64 nb, u64 eps, u64 q, unsigned mu);
bool sis_condition(u64 na, u64 nb, u64 xi, u64 q, unsigned mu);

// Smallest mu >= mu_min satisfying the condition; InfeasibleAtCap past mu_max.
unsigned lwe_primal_blocksize(u64 na, u64 nb, u64 eps, u64 q, const AttackModel& model = {});
unsigned lwe_dual_blocksize(u64 na, u64 nb, u64 eps, u64 q, const AttackModel& model = {});
// XiTooLarge when xi >= q.
unsigned sis_blocksize(u64 na, u64 nb, u64 xi, u64 q, const AttackModel& model = {});

struct BlockSizeEstimate {
  unsigned blocksize;
  unsigned core_svp;
};

// MLWE_{k,l,eta} over R_q of dimension n, analysed as LWE_{nk,nl,eta}:
// min of primal and dual block sizes.
BlockSizeEstimate mlwe_coresvp(u64 k, u64 l, u64 eta, u64 q, u64 n, const AttackModel& model = {});

struct ZetaBounds {
  u64 zeta;
  u64 zeta_prime;
};

ZetaBounds zeta_bounds(const ParameterSet& params);

double alpha_lower_bound(const ParameterSet& params);

struct SizeEstimate {
  u64 pk_bytes;
  u64 sig_bytes;
};

// Byte sizes of the full scheme (compressed t with d dropped bits, hints).
SizeEstimate sizes(const ParameterSet& params);

double expected_repeats(const ParameterSet& params);

struct StmsisEstimate {
  unsigned blocksize;  // of MLWE_{k+l+1,k,eta'}
  double z;            // 0.265 * blocksize, unfloored
  i64 core_svp;        // floor(z/2 - 1.5 log2 B_l - 3)
};

// Largest eta' with 2 zeta eta' n (k+l+1) < floor(q/32); 0 if none.
u64 max_eta_prime(const ParameterSet& params);

// Throws EtaPrimeInvalid if eta' is missing, zero, or violates the bound above.
StmsisEstimate stmsis_coresvp(const ParameterSet& params, int level, const AttackModel& model = {});

// Exact lower bound on the MLWE advantage obtained from a SelfTargetMSIS
// solver with advantage eps using Q queries; may be negative.
Rational advantage_lower_bound(const Rational& eps, const BigInt& queries, u64 n, u64 q, u64 k, u64 tau, u64 w);

// |B_tau| = 2^tau * C(n, tau).
BigInt ball_size(u64 n, u64 tau);

enum class CheckStatus { Pass, Fail, NotApplicable };

struct ConstraintOutcome {
  std::string name;
  CheckStatus status;
  std::string detail;
};

std::vector<ConstraintOutcome> validate(const ParameterSet& params);
bool all_pass(const std::vector<ConstraintOutcome>& outcomes) noexcept;
// First failing outcome, if any.
std::optional<ConstraintOutcome> first_failure(const std::vector<ConstraintOutcome>& outcomes);

struct SecurityReport {
  int level = 0;
  u64 zeta = 0;
  u64 zeta_prime = 0;
  double alpha_lb = 0;
  u64 pk_bytes = 0;
  u64 sig_bytes = 0;
  double repeats = 0;
  unsigned lwe_blocksize = 0;
  unsigned lwe_coresvp = 0;
  std::optional<unsigned> sis_blocksize;  // absent when zeta' >= q
  std::optional<unsigned> sis_coresvp;
  std::optional<unsigned> stmsis_lwe_blocksize;  // absent without eta'
  std::optional<i64> stmsis_coresvp;
  std::vector<ConstraintOutcome> validity;
};

SecurityReport report(const ParameterSet& params, int level, const AttackModel& model = {});

struct SearchSpace {
  int level = 2;
  std::optional<i64> target_core_svp;  // default: log2 B_level
  u64 q = kQ0;
  u64 n = 512;
  u64 d = 15;
  u64 tau = 40;
  u64 k_min = 1, k_max = 16;
  u64 l_min = 1, l_max = 16;
  u64 gamma2_min = 1u << 17, gamma2_max = 1u << 21;
  std::vector<u64> etas = {2, 4};
  // eta' = max_eta_prime / divisor; the published sets correspond to 2.
  u64 eta_prime_divisor = 1;
  unsigned workers = 1;
};

struct SearchResult {
  ParameterSet params;
  SecurityReport report;
  std::size_t candidates_evaluated = 0;
};

// Lexicographic minimum of (pk_bytes, sig_bytes, repeats) over the feasible
// candidates of the space. Throws NoFeasiblePoint.
SearchResult search(const SearchSpace& space, const AttackModel& model = {});

}  // namespace nativedil
