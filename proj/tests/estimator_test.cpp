#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "nativedil/error.hpp"
#include "nativedil/estimator.hpp"
#include "published.hpp"

namespace nativedil {
namespace {

using testing::kPublishedColumns;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadParams;
}

const ParameterSet& builtin(std::string_view id) { return find_builtin(id)->params; }

bool is_ours(std::string_view id) { return id.substr(0, 5) == "ours-" || id.substr(0, 5) == "nist-"; }

TEST(Delta, DecreasingAndFrozen) {
  for (unsigned mu = 51; mu <= 2000; ++mu) {
    ASSERT_LT(delta(mu), delta(mu - 1)) << mu;
  }
  // High-precision values from tests/oracles/derive.py.
  EXPECT_NEAR(delta(380), 1.0041258211904747787, 1e-14);
  EXPECT_NEAR(delta(50), 1.012064863554853012, 1e-14);
  EXPECT_GT(delta(380), 1.0040);
  EXPECT_LT(delta(380), 1.0046);
  EXPECT_EQ(code_of([] { delta(1); }), ErrorCode::DomainError);
}

TEST(CoreSvp, FloorOfExactProduct) {
  EXPECT_EQ(core_svp(4942), 1309u);
  EXPECT_EQ(core_svp(605), 160u);
  EXPECT_EQ(core_svp(1000), 265u);
  EXPECT_EQ(core_svp(999), 264u);
}

TEST(Report, ReproducesPublishedColumns) {
  for (const auto& col : kPublishedColumns) {
    SCOPED_TRACE(std::string(col.id));
    const auto& p = builtin(col.id);
    const auto r = report(p, p.level);
    EXPECT_EQ(static_cast<i64>(r.zeta), col.zeta);
    EXPECT_EQ(static_cast<i64>(r.zeta_prime), col.zeta_prime);
    EXPECT_EQ(static_cast<i64>(r.pk_bytes), col.pk_bytes);
    EXPECT_EQ(static_cast<i64>(r.sig_bytes), col.sig_bytes);
    EXPECT_NEAR(r.repeats, col.repeats, 0.01);
    EXPECT_EQ(static_cast<i64>(r.lwe_blocksize), col.lwe_blocksize);
    EXPECT_EQ(static_cast<i64>(r.lwe_coresvp), col.lwe_coresvp);
    if (col.stmsis_blocksize >= 0) {
      ASSERT_TRUE(r.stmsis_lwe_blocksize.has_value());
      EXPECT_EQ(static_cast<i64>(*r.stmsis_lwe_blocksize), col.stmsis_blocksize);
      EXPECT_EQ(*r.stmsis_coresvp, col.stmsis_coresvp);
    } else {
      EXPECT_FALSE(r.stmsis_lwe_blocksize.has_value());
    }
    if (col.sis_blocksize >= 0) {
      ASSERT_TRUE(r.sis_blocksize.has_value());
      EXPECT_EQ(static_cast<i64>(*r.sis_blocksize), col.sis_blocksize);
      EXPECT_EQ(static_cast<i64>(*r.sis_coresvp), col.sis_coresvp);
    }
  }
}

TEST(MlweCoreSvp, Examples) {
  const auto a = mlwe_coresvp(4, 4, 2, kDilithiumQ, 256);
  EXPECT_EQ(a.blocksize, 448u);
  EXPECT_EQ(a.core_svp, 118u);
  const auto b = mlwe_coresvp(10, 4, 2, kQ0, 512);
  EXPECT_EQ(b.blocksize, 605u);
  EXPECT_EQ(b.core_svp, 160u);
  const auto c = mlwe_coresvp(13, 13, 2, kQ0, 512);
  EXPECT_EQ(c.blocksize, 2079u);
  EXPECT_EQ(c.core_svp, 550u);
}

TEST(BlockSizes, AreMinimal) {
  for (const auto& col : kPublishedColumns) {
    SCOPED_TRACE(std::string(col.id));
    const auto& p = builtin(col.id);
    const u64 na = p.n * p.k, nb = p.n * p.l;
    const unsigned primal = lwe_primal_blocksize(na, nb, p.eta, p.q);
    const unsigned dual = lwe_dual_blocksize(na, nb, p.eta, p.q);
    EXPECT_TRUE(primal_condition(na, nb, p.eta, p.q, primal));
    EXPECT_FALSE(primal_condition(na, nb, p.eta, p.q, primal - 1));
    EXPECT_TRUE(dual_condition(na, nb, p.eta, p.q, dual));
    EXPECT_FALSE(dual_condition(na, nb, p.eta, p.q, dual - 1));
    EXPECT_EQ(std::min(primal, dual), mlwe_coresvp(p.k, p.l, p.eta, p.q, p.n).blocksize);

    const u64 zp = zeta_bounds(p).zeta_prime;
    if (zp < p.q) {
      const unsigned s = sis_blocksize(na, nb, zp, p.q);
      EXPECT_TRUE(sis_condition(na, nb, zp, p.q, s));
      EXPECT_FALSE(sis_condition(na, nb, zp, p.q, s - 1));
    }
  }
}

TEST(BlockSizes, Errors) {
  EXPECT_EQ(code_of([] { sis_blocksize(512, 512, kDilithiumQ, kDilithiumQ); }), ErrorCode::XiTooLarge);
  AttackModel tight;
  tight.mu_max = 100;
  EXPECT_EQ(code_of([&] { mlwe_coresvp(10, 4, 2, kQ0, 512, tight); }), ErrorCode::InfeasibleAtCap);
}

TEST(Zeta, Examples) {
  const auto z = zeta_bounds(builtin("ours-sl2"));
  EXPECT_EQ(z.zeta, 1539077u);
  EXPECT_EQ(z.zeta_prime, 1767434u);
  EXPECT_EQ(zeta_bounds(builtin("qrom-rec")).zeta_prime, 3622718u);
  auto p = builtin("ours-sl2");
  p.gamma1 = p.beta + 1;
  EXPECT_EQ(zeta_bounds(p).zeta, 2 * p.gamma2 + 1 + (u64{1} << (p.d - 1)) * p.tau);
}

TEST(Alpha, LowerBound) {
  EXPECT_NEAR(alpha_lower_bound(builtin("ours-sl2")), 512.0, 0.1);
  for (const auto& s : builtin_sets()) {
    if (is_ours(s.id)) {
      EXPECT_GE(alpha_lower_bound(s.params), 257.0) << s.id;
    }
  }
  auto p = builtin("ours-sl2");
  p.gamma1 = p.gamma2 * 2;
  EXPECT_LT(alpha_lower_bound(p), 0.0);
}

TEST(Sizes, Examples) {
  EXPECT_EQ(sizes(builtin("dil-sl2")).pk_bytes, 1312u);
  EXPECT_EQ(sizes(builtin("dil-sl2")).sig_bytes, 2476u);
  EXPECT_EQ(sizes(builtin("ours-sl2")).pk_bytes, 18592u);
  EXPECT_EQ(sizes(builtin("ours-sl2")).sig_bytes, 5554u);
  EXPECT_EQ(sizes(builtin("nist-sl5")).pk_bytes, 24160u);
  EXPECT_EQ(sizes(builtin("nist-sl5")).sig_bytes, 18354u);
}

TEST(Repeats, Examples) {
  EXPECT_NEAR(expected_repeats(builtin("dil-sl2")), 4.25, 0.01);
  EXPECT_NEAR(expected_repeats(builtin("ours-sl2")), 5.30, 0.01);
  auto p = builtin("ours-sl2");
  p.beta = 0;
  EXPECT_EQ(expected_repeats(p), 1.0);
}

TEST(Stmsis, Examples) {
  const auto a = stmsis_coresvp(builtin("ours-sl2"), 2);
  EXPECT_EQ(a.blocksize, 1753u);
  EXPECT_NEAR(a.z, 464.545, 1e-9);
  EXPECT_EQ(a.core_svp, 100);
  const auto b = stmsis_coresvp(builtin("ours-sl5"), 5);
  EXPECT_EQ(b.blocksize, 3025u);
  EXPECT_EQ(b.core_svp, 205);
  // The query-bound term is 1.5 log2 B_l; every tabulated exponent is even,
  // so removing it leaves the B_l = 1 value floor(z/2 - 3).
  for (int level = 1; level <= 5; ++level) {
    const auto e = stmsis_coresvp(builtin("ours-sl2"), level);
    const i64 bound_term = 3 * static_cast<i64>(AttackModel::query_bound_log2(level)) / 2;
    EXPECT_EQ(e.core_svp + bound_term, static_cast<i64>(std::floor(e.z / 2 - 3)));
  }
}

TEST(Stmsis, EtaPrimeBound) {
  const auto& p = builtin("ours-sl2");
  EXPECT_EQ(max_eta_prime(p), 16u);
  auto q = p;
  q.eta_prime = 17;
  EXPECT_EQ(code_of([&] { stmsis_coresvp(q, 2); }), ErrorCode::EtaPrimeInvalid);
  q.eta_prime = 0;
  EXPECT_EQ(code_of([&] { stmsis_coresvp(q, 2); }), ErrorCode::EtaPrimeInvalid);
  q.eta_prime.reset();
  EXPECT_EQ(code_of([&] { stmsis_coresvp(q, 2); }), ErrorCode::EtaPrimeInvalid);
}

TEST(Advantage, Anchors) {
  const BigInt qk = boost::multiprecision::pow(BigInt(kQ0), 10);
  const Rational floor_eps(BigInt(512), qk);
  for (u64 w : {1u, 5u, 200u}) {
    const Rational expect = -Rational(BigInt(1), 4 * boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(w)));
    EXPECT_EQ(advantage_lower_bound(floor_eps, 1, 512, kQ0, 10, 40, w), expect);
  }
  const Rational v = advantage_lower_bound(1, 1, 512, kQ0, 10, 40, 200);
  EXPECT_NEAR(static_cast<double>(v), 0.0030864197530864197531, 1e-15);
  EXPECT_LT(v, Rational(1, 324));
  EXPECT_EQ(ball_size(8, 2), 112);
  EXPECT_EQ(ball_size(512, 40),
            BigInt("662262459173454035619911276474438347752567128353003429742030281821388800"));
}

TEST(Advantage, Monotone) {
  const BigInt qk = boost::multiprecision::pow(BigInt(kQ0), 10);
  const Rational lo(BigInt(512), qk);
  Rational prev = advantage_lower_bound(lo, 3, 512, kQ0, 10, 40, 50);
  for (int i = 1; i <= 100; ++i) {
    const Rational eps = lo + (1 - lo) * Rational(i, 100);
    const Rational v = advantage_lower_bound(eps, 3, 512, kQ0, 10, 40, 50);
    ASSERT_GE(v, prev) << i;
    prev = v;
  }
  prev = advantage_lower_bound(Rational(1, 2), 3, 512, kQ0, 10, 40, 1);
  for (u64 w = 2; w <= 100; ++w) {
    const Rational v = advantage_lower_bound(Rational(1, 2), 3, 512, kQ0, 10, 40, w);
    ASSERT_GT(v, prev) << w;
    prev = v;
  }
}

TEST(Validate, BuiltinSets) {
  for (const auto& s : builtin_sets()) {
    if (!is_ours(s.id)) continue;
    const auto out = validate(s.params);
    EXPECT_TRUE(all_pass(out)) << s.id << ": " << first_failure(out).value_or(ConstraintOutcome{}).name;
    for (const auto& o : out) EXPECT_NE(o.status, CheckStatus::NotApplicable) << s.id << " " << o.name;
  }
  for (const char* id : {"qrom-rec", "qrom-vh"}) {
    const auto f = first_failure(validate(builtin(id)));
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->name, "q_1_mod_2n");
  }
  auto p = builtin("ours-sl2");
  p.beta = 81;
  const auto f = first_failure(validate(p));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->name, "beta_eq_tau_eta");
}

TEST(Validate, TheoremBoundAtSl2) {
  // 2 * 1539077 * 8 * 512 * 15 < floor(q0 / 32)
  EXPECT_EQ(2ULL * 1539077 * 8 * 512 * 15, 189121781760ULL);
  EXPECT_EQ(kQ0 / 32, 388736063808ULL);
  for (const auto& o : validate(builtin("ours-sl2"))) {
    if (o.name == "thm_eta_prime_bound") {
      EXPECT_EQ(o.status, CheckStatus::Pass);
    }
  }
}

TEST(Search, FindsSetNoLargerThanPublished) {
  SearchSpace space;
  space.level = 2;
  const auto a = search(space);
  EXPECT_LE(a.report.pk_bytes, 18592u);
  EXPECT_TRUE(all_pass(validate(a.params)));
  EXPECT_GE(a.report.lwe_coresvp, 86u);
  EXPECT_GE(*a.report.sis_coresvp, 86u);
  EXPECT_GE(*a.report.stmsis_coresvp, 86);
  space.workers = 3;
  const auto b = search(space);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.candidates_evaluated, b.candidates_evaluated);
}

TEST(Search, EmptyRange) {
  SearchSpace space;
  space.k_min = 3;
  space.k_max = 2;
  EXPECT_EQ(code_of([&] { search(space); }), ErrorCode::NoFeasiblePoint);
  SearchSpace tiny;
  tiny.k_max = 2;
  tiny.l_max = 2;
  EXPECT_EQ(code_of([&] { search(tiny); }), ErrorCode::NoFeasiblePoint);
}

TEST(ParamsJson, RoundTrip) {
  for (const auto& s : builtin_sets()) {
    EXPECT_EQ(params_from_json(params_to_json(s.params)), s.params) << s.id;
  }
  EXPECT_EQ(code_of([] { params_from_json("{\"q\": 17}"); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { params_from_json("not json"); }), ErrorCode::BadParams);
}

}  // namespace
}  // namespace nativedil
