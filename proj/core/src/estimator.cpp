#include "nativedil/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <tuple>

#include "nativedil/error.hpp"
#include "nativedil/lemma_lab.hpp"

namespace nativedil {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// floor(a / b) for b > 0.
i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

// Smallest mu with core_svp(mu) >= target.
i64 blocksize_for_target(i64 target) { return target <= 0 ? 0 : (1000 * target + 264) / 265; }

// Smallest mu with the SelfTargetMSIS Core-SVP >= target at query bound 2^b.
i64 stmsis_blocksize_for_target(i64 target, i64 b) {
  const i64 need = 2000 * target + 3000 * b + 6000;
  return need <= 0 ? 0 : (need + 264) / 265;
}

i64 stmsis_core(unsigned mu, unsigned b) {
  return floor_div(265 * static_cast<i64>(mu) - 3000 * static_cast<i64>(b) - 6000, 2000);
}

template <typename Pred>
unsigned scan(const AttackModel& model, Pred holds) {
  for (unsigned mu = std::max(model.mu_min, 2u); mu <= model.mu_max; ++mu) {
    if (holds(mu)) {
      return mu;
    }
  }
  throw Error(ErrorCode::InfeasibleAtCap, "no block size up to " + std::to_string(model.mu_max));
}

bool mlwe_holds(u64 na, u64 nb, u64 eps, u64 q, unsigned mu, ErrorModel em) {
  return primal_condition(na, nb, eps, q, mu, em) || dual_condition(na, nb, eps, q, mu);
}

// True when every block size below `mu_needed` fails, i.e. the minimal block
// size is at least mu_needed. Relies on monotonicity in mu.
template <typename Pred>
bool at_least(const AttackModel& model, i64 mu_needed, Pred holds) {
  const i64 below = mu_needed - 1;
  if (below < static_cast<i64>(std::max(model.mu_min, 2u))) {
    return true;
  }
  if (below > static_cast<i64>(model.mu_max)) {
    return false;  // past the cap counts as infeasible
  }
  return !holds(static_cast<unsigned>(below));
}

std::string fmt_big(const BigInt& v) { return v.str(); }

ConstraintOutcome outcome(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

ConstraintOutcome not_applicable(std::string name, std::string detail) {
  return {std::move(name), CheckStatus::NotApplicable, std::move(detail)};
}

}  // namespace

unsigned AttackModel::query_bound_log2(int level) {
  if (level < 1 || level > 5) {
    throw Error(ErrorCode::BadParams, "security level must be in 1..5");
  }
  return kQueryBoundLog2[static_cast<std::size_t>(level - 1)];
}

double delta(unsigned mu) {
  if (mu < 2) {
    throw Error(ErrorCode::DomainError, "delta needs mu >= 2");
  }
  const double m = mu;
  return std::pow(std::pow(m * kPi, 1.0 / m) * m / (2.0 * kPi * kE), 1.0 / (2.0 * (m - 1.0)));
}

unsigned core_svp(unsigned mu) noexcept {
  return static_cast<unsigned>(static_cast<u64>(mu) * AttackModel::kCoreSvpMilli / 1000);
}

bool primal_condition(u64 na, u64 nb, u64 eps, u64 q, unsigned mu, ErrorModel model) {
  const double e = static_cast<double>(eps);
  const double xi = model == ErrorModel::UniformBound ? e : std::sqrt(e * (e + 1.0) / 3.0);
  const double c = static_cast<double>(na + nb + 1);
  const double lhs = std::log(xi) + 0.5 * std::log(static_cast<double>(mu));
  const double rhs = (2.0 * mu - c) * std::log(delta(mu)) + static_cast<double>(na) / c * std::log(static_cast<double>(q));
  return lhs <= rhs;
}

bool dual_condition(u64 na, u64 nb, u64 eps, u64 q, unsigned mu) {
  const double c = static_cast<double>(na + nb);
  const double lq = std::log(static_cast<double>(q));
  const double log_tau = (c - 1.0) * std::log(delta(mu)) + static_cast<double>(nb) / c * lq +
                         std::log(static_cast<double>(eps)) - lq;
  const double tau2 = std::exp(2.0 * log_tau);
  return 2.0 * kPi * kPi * tau2 <= 0.2075 * mu / 2.0 * std::log(2.0);
}

bool sis_condition(u64 na, u64 nb, u64 xi, u64 q, unsigned mu) {
  const double len = 2.0 * std::sqrt(static_cast<double>(na) * std::log2(static_cast<double>(q)) * std::log2(delta(mu)));
  return len - 0.5 * std::log2(static_cast<double>(na + nb)) <= std::log2(static_cast<double>(xi));
}

unsigned lwe_primal_blocksize(u64 na, u64 nb, u64 eps, u64 q, const AttackModel& model) {
  return scan(model, [&](unsigned mu) { return primal_condition(na, nb, eps, q, mu, model.primal_error); });
}

unsigned lwe_dual_blocksize(u64 na, u64 nb, u64 eps, u64 q, const AttackModel& model) {
  return scan(model, [&](unsigned mu) { return dual_condition(na, nb, eps, q, mu); });
}

unsigned sis_blocksize(u64 na, u64 nb, u64 xi, u64 q, const AttackModel& model) {
  if (xi >= q) {
    throw Error(ErrorCode::XiTooLarge, "infinity-norm bound must be below q");
  }
  return scan(model, [&](unsigned mu) { return sis_condition(na, nb, xi, q, mu); });
}

BlockSizeEstimate mlwe_coresvp(u64 k, u64 l, u64 eta, u64 q, u64 n, const AttackModel& model) {
  const unsigned mu = scan(model, [&](unsigned m) { return mlwe_holds(n * k, n * l, eta, q, m, model.primal_error); });
  return {mu, core_svp(mu)};
}

ZetaBounds zeta_bounds(const ParameterSet& p) {
  const u64 g1 = p.gamma1 > p.beta ? p.gamma1 - p.beta : 0;
  const u64 zeta = std::max(g1, 2 * p.gamma2 + 1 + (u64{1} << (p.d - 1)) * p.tau);
  const u64 zeta_prime = std::max(2 * g1, 4 * p.gamma2 + 2);
  return {zeta, zeta_prime};
}

double alpha_lower_bound(const ParameterSet& p) {
  const double n = static_cast<double>(p.n);
  const double first = -n * std::log2((2.0 * p.gamma1 + 1.0) / (2.0 * p.gamma2 - 1.0));
  const double second = -static_cast<double>(p.k * p.l) * std::log2(n / static_cast<double>(p.q));
  return std::min(first, second);
}

SizeEstimate sizes(const ParameterSet& p) {
  const u64 log_q = ceil_log2(p.q);
  const u64 t_bits = log_q > p.d ? log_q - p.d : 0;
  const u64 pk_bits = p.n * p.k * t_bits + 256;
  const u64 sig_bits = p.n * p.l * ceil_log2(2 * p.gamma1) + p.n * p.k + p.tau * (ceil_log2(p.n) + 1);
  return {(pk_bits + 7) / 8, (sig_bits + 7) / 8};
}

double expected_repeats(const ParameterSet& p) {
  const double n = static_cast<double>(p.n);
  const double b = static_cast<double>(p.beta);
  return std::exp(n * b * (static_cast<double>(p.l) / p.gamma1 + static_cast<double>(p.k) / p.gamma2));
}

u64 max_eta_prime(const ParameterSet& p) {
  const u64 zeta = zeta_bounds(p).zeta;
  const BigInt unit = BigInt(2) * zeta * p.n * (p.k + p.l + 1);
  const u64 rhs = p.q / 32;
  if (unit == 0 || rhs == 0) {
    return 0;
  }
  // Largest e with unit * e < rhs.
  return static_cast<u64>((BigInt(rhs) - 1) / unit);
}

StmsisEstimate stmsis_coresvp(const ParameterSet& p, int level, const AttackModel& model) {
  if (!p.eta_prime || *p.eta_prime == 0) {
    throw Error(ErrorCode::EtaPrimeInvalid, "eta' is not set");
  }
  if (*p.eta_prime > max_eta_prime(p)) {
    throw Error(ErrorCode::EtaPrimeInvalid,
                "eta' = " + std::to_string(*p.eta_prime) + " exceeds the bound " + std::to_string(max_eta_prime(p)));
  }
  const unsigned b = AttackModel::query_bound_log2(level);
  const unsigned mu = mlwe_coresvp(p.k + p.l + 1, p.k, *p.eta_prime, p.q, p.n, model).blocksize;
  return {mu, 0.265 * mu, stmsis_core(mu, b)};
}

BigInt ball_size(u64 n, u64 tau) {
  BigInt c = 1;
  for (u64 i = 0; i < tau; ++i) {
    c = c * (n - i) / (i + 1);
  }
  return c << static_cast<unsigned>(tau);
}

Rational advantage_lower_bound(const Rational& eps, const BigInt& queries, u64 n, u64 q, u64 k, u64 tau, u64 w) {
  const BigInt qk = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(k));
  const Rational a = eps - Rational(BigInt(n), qk);
  const BigInt d = (2 * queries + 1) * (2 * queries + 1);
  const Rational first = a / (4 * Rational(d)) * (a / Rational(d) - Rational(BigInt(1), ball_size(n, tau)));
  const BigInt three_w = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(w));
  return first - Rational(BigInt(1), 4 * three_w);
}

std::vector<ConstraintOutcome> validate(const ParameterSet& p) {
  std::vector<ConstraintOutcome> out;
  const bool q_prime = is_prime(p.q) && p.q != 2;
  out.push_back(outcome("q_prime", q_prime, "q = " + std::to_string(p.q)));
  const bool n_pow2 = p.n > 0 && is_power_of_two(p.n);
  out.push_back(outcome("n_power_of_two", n_pow2, "n = " + std::to_string(p.n)));
  out.push_back(outcome("q_1_mod_2n", p.n > 0 && p.q % (2 * p.n) == 1,
                        "q mod 2n = " + (p.n > 0 ? std::to_string(p.q % (2 * p.n)) : std::string("undefined"))));
  out.push_back(outcome("q_1_mod_2gamma2", p.gamma2 > 0 && p.q % (2 * p.gamma2) == 1,
                        "q mod 2*gamma2 = " +
                            (p.gamma2 > 0 ? std::to_string(p.q % (2 * p.gamma2)) : std::string("undefined"))));
  out.push_back(outcome("q_gt_4gamma2", p.q > 4 * p.gamma2, "4*gamma2 = " + std::to_string(4 * p.gamma2)));
  out.push_back(outcome("beta_eq_tau_eta", p.beta == p.tau * p.eta,
                        "beta = " + std::to_string(p.beta) + ", tau*eta = " + std::to_string(p.tau * p.eta)));
  out.push_back(outcome("gamma1_gt_beta", p.gamma1 > p.beta, "gamma1 = " + std::to_string(p.gamma1)));
  out.push_back(outcome("gamma2_gt_beta", p.gamma2 > p.beta, "gamma2 = " + std::to_string(p.gamma2)));
  out.push_back(outcome("tau_le_n", p.tau <= p.n, "tau = " + std::to_string(p.tau)));
  const auto z = zeta_bounds(p);
  out.push_back(outcome("zeta_prime_lt_q", z.zeta_prime < p.q, "zeta' = " + std::to_string(z.zeta_prime)));

  if (!p.eta_prime) {
    const std::string why = "no eta' (set not analysed through the reduction)";
    out.push_back(not_applicable("thm_q_ge_16", why));
    out.push_back(not_applicable("thm_eta_prime_bound", why));
    out.push_back(not_applicable("alpha_ge_257", why));
    return out;
  }
  const auto h = check_theorem_hypotheses(p.q, p.n, p.k, p.l + 1, z.zeta, *p.eta_prime);
  out.push_back(outcome("thm_q_ge_16", h.q_at_least_16, "q = " + std::to_string(p.q)));
  out.push_back(outcome("thm_eta_prime_bound", *p.eta_prime > 0 && h.norm_bound,
                        "2*zeta*eta'*n*(k+l+1) = " + fmt_big(h.lhs) + " vs floor(q/32) = " + std::to_string(h.rhs)));
  const double alpha = alpha_lower_bound(p);
  std::ostringstream a;
  a << "alpha >= " << alpha;
  out.push_back(outcome("alpha_ge_257", alpha >= 257.0, a.str()));
  return out;
}

bool all_pass(const std::vector<ConstraintOutcome>& outcomes) noexcept {
  return std::none_of(outcomes.begin(), outcomes.end(),
                      [](const ConstraintOutcome& o) { return o.status == CheckStatus::Fail; });
}

std::optional<ConstraintOutcome> first_failure(const std::vector<ConstraintOutcome>& outcomes) {
  for (const auto& o : outcomes) {
    if (o.status == CheckStatus::Fail) {
      return o;
    }
  }
  return std::nullopt;
}

SecurityReport report(const ParameterSet& p, int level, const AttackModel& model) {
  SecurityReport r;
  r.level = level;
  const auto z = zeta_bounds(p);
  r.zeta = z.zeta;
  r.zeta_prime = z.zeta_prime;
  r.alpha_lb = alpha_lower_bound(p);
  const auto s = sizes(p);
  r.pk_bytes = s.pk_bytes;
  r.sig_bytes = s.sig_bytes;
  r.repeats = expected_repeats(p);
  const auto lwe = mlwe_coresvp(p.k, p.l, p.eta, p.q, p.n, model);
  r.lwe_blocksize = lwe.blocksize;
  r.lwe_coresvp = lwe.core_svp;
  if (z.zeta_prime < p.q) {
    r.sis_blocksize = sis_blocksize(p.n * p.k, p.n * p.l, z.zeta_prime, p.q, model);
    r.sis_coresvp = core_svp(*r.sis_blocksize);
  }
  if (p.eta_prime && *p.eta_prime > 0 && *p.eta_prime <= max_eta_prime(p)) {
    const auto st = stmsis_coresvp(p, level, model);
    r.stmsis_lwe_blocksize = st.blocksize;
    r.stmsis_coresvp = st.core_svp;
  }
  r.validity = validate(p);
  return r;
}

namespace {

struct Candidate {
  ParameterSet params;
  u64 pk = 0;
  u64 sig = 0;
  double repeats = 0;

  auto key() const {
    return std::make_tuple(pk, sig, repeats, params.l, params.gamma2, params.gamma1, params.eta);
  }
};

std::vector<u64> gamma2_candidates(const SearchSpace& s) {
  std::vector<u64> out;
  if (s.q < 3) {
    return out;
  }
  const u64 half = (s.q - 1) / 2;
  // Divisors of (q-1)/2 built from its factorization.
  std::vector<u64> divisors = {1};
  u64 rest = half;
  for (u64 f : prime_factors(half)) {
    u64 e = 0;
    while (rest % f == 0) {
      rest /= f;
      ++e;
    }
    const std::size_t base = divisors.size();
    u64 pw = 1;
    for (u64 i = 1; i <= e; ++i) {
      pw *= f;
      for (std::size_t j = 0; j < base; ++j) {
        divisors.push_back(divisors[j] * pw);
      }
    }
  }
  for (u64 g : divisors) {
    if (g >= s.gamma2_min && g <= s.gamma2_max && s.q > 4 * g) {
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Evaluator {
  const SearchSpace& space;
  const AttackModel& model;
  i64 target;
  unsigned bound_log2;

  bool feasible(const ParameterSet& p) const {
    const u64 n = p.n;
    // LWE.
    if (!at_least(model, blocksize_for_target(target),
                  [&](unsigned mu) { return mlwe_holds(n * p.k, n * p.l, p.eta, p.q, mu, model.primal_error); })) {
      return false;
    }
    // SIS.
    const u64 zp = zeta_bounds(p).zeta_prime;
    if (zp >= p.q) {
      return false;
    }
    if (!at_least(model, blocksize_for_target(target),
                  [&](unsigned mu) { return sis_condition(n * p.k, n * p.l, zp, p.q, mu); })) {
      return false;
    }
    // SelfTargetMSIS through the reduction.
    return at_least(model, stmsis_blocksize_for_target(target, bound_log2), [&](unsigned mu) {
      return mlwe_holds(n * (p.k + p.l + 1), n * p.k, *p.eta_prime, p.q, mu, model.primal_error);
    });
  }

  // Best feasible candidate among the given l values for fixed k.
  std::pair<std::optional<Candidate>, std::size_t> run(u64 k, const std::vector<u64>& ls,
                                                       const std::vector<u64>& gamma2s) const {
    std::optional<Candidate> best;
    std::size_t evaluated = 0;
    for (u64 l : ls) {
      for (u64 eta : space.etas) {
        const u64 beta = space.tau * eta;
        for (u64 g2 : gamma2s) {
          if (g2 <= beta) {
            continue;
          }
          const u64 g1_low = (g2 + 1) / 2;
          const u64 width = ceil_log2(2 * g1_low);
          const u64 g1_high = u64{1} << (width - 1);
          std::vector<u64> g1s = {g1_low};
          if (g1_high != g1_low) {
            g1s.push_back(g1_high);
          }
          for (u64 g1 : g1s) {
            ++evaluated;
            ParameterSet p;
            p.name = "search-l" + std::to_string(space.level);
            p.level = space.level;
            p.q = space.q;
            p.n = space.n;
            p.k = k;
            p.l = l;
            p.d = space.d;
            p.tau = space.tau;
            p.gamma1 = g1;
            p.gamma2 = g2;
            p.eta = eta;
            p.beta = beta;
            if (g1 <= beta) {
              continue;
            }
            const u64 ep = max_eta_prime(p) / std::max<u64>(space.eta_prime_divisor, 1);
            if (ep == 0) {
              continue;
            }
            p.eta_prime = ep;
            if (!all_pass(validate(p)) || !feasible(p)) {
              continue;
            }
            const auto s = sizes(p);
            Candidate c{p, s.pk_bytes, s.sig_bytes, expected_repeats(p)};
            if (!best || c.key() < best->key()) {
              best = std::move(c);
            }
          }
        }
      }
    }
    return {std::move(best), evaluated};
  }
};

}  // namespace

SearchResult search(const SearchSpace& space, const AttackModel& model) {
  const unsigned bound_log2 = AttackModel::query_bound_log2(space.level);
  const i64 target = space.target_core_svp.value_or(static_cast<i64>(bound_log2));
  if (space.n == 0 || !is_power_of_two(space.n) || !is_prime(space.q) || space.q % (2 * space.n) != 1) {
    throw Error(ErrorCode::BadParams, "search needs a prime q = 1 mod 2n with n a power of two");
  }
  const std::vector<u64> gamma2s = gamma2_candidates(space);
  std::vector<u64> ls;
  for (u64 l = std::max<u64>(space.l_min, 1); l <= space.l_max; ++l) {
    ls.push_back(l);
  }
  const Evaluator ev{space, model, target, bound_log2};
  const unsigned workers = std::max(1u, std::min<unsigned>(space.workers, static_cast<unsigned>(std::max<std::size_t>(ls.size(), 1))));

  std::size_t evaluated = 0;
  for (u64 k = std::max<u64>(space.k_min, 1); k <= space.k_max; ++k) {
    std::optional<Candidate> best;
    if (workers == 1) {
      auto [b, e] = ev.run(k, ls, gamma2s);
      best = std::move(b);
      evaluated += e;
    } else {
      // Round-robin split over l; the merge uses the same total order, so
      // the winner does not depend on the worker count.
      std::vector<std::future<std::pair<std::optional<Candidate>, std::size_t>>> jobs;
      for (unsigned w = 0; w < workers; ++w) {
        std::vector<u64> share;
        for (std::size_t i = w; i < ls.size(); i += workers) {
          share.push_back(ls[i]);
        }
        jobs.push_back(std::async(std::launch::async, [&ev, k, share, &gamma2s] { return ev.run(k, share, gamma2s); }));
      }
      for (auto& j : jobs) {
        auto [b, e] = j.get();
        evaluated += e;
        if (b && (!best || b->key() < best->key())) {
          best = std::move(b);
        }
      }
    }
    if (best) {
      // The public key size depends on k only, so the first k with a
      // feasible point holds the minimum.
      SearchResult result{best->params, report(best->params, space.level, model), evaluated};
      return result;
    }
  }
  throw Error(ErrorCode::NoFeasiblePoint, "no candidate meets the Core-SVP target " + std::to_string(target));
}

}  // namespace nativedil
