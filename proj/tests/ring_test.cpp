#include <gtest/gtest.h>

#include <array>
#include <map>

#include "nativedil/error.hpp"
#include "nativedil/params.hpp"
#include "nativedil/ring.hpp"
#include "nativedil/xof.hpp"
#include "test_util.hpp"

namespace nativedil {
namespace {

using testing::random_element;
using testing::schoolbook_mul;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadParams;
}

TEST(Modulus, MatchesWideArithmetic) {
  std::mt19937_64 rng(7);
  for (u64 q : {u64{17}, kDilithiumQ, kQ0, kDilithiumQromQ}) {
    const Modulus m(q);
    std::uniform_int_distribution<u64> d(0, q - 1);
    for (int i = 0; i < 2000; ++i) {
      const u64 a = d(rng), b = d(rng);
      ASSERT_EQ(m.mul(a, b), static_cast<u64>(static_cast<u128>(a) * b % q));
      const u64 s = m.shoup(b);
      ASSERT_EQ(m.mul_shoup(a, b, s), static_cast<u64>(static_cast<u128>(a) * b % q));
      ASSERT_EQ(m.add(a, b), static_cast<u64>((static_cast<u128>(a) + b) % q));
      ASSERT_EQ(m.add(m.sub(a, b), b), a);
    }
  }
}

TEST(Modulus, Primality) {
  EXPECT_TRUE(is_prime(kQ0));
  EXPECT_TRUE(is_prime(kDilithiumQ));
  EXPECT_TRUE(is_prime(kDilithiumQromQ));
  EXPECT_FALSE(is_prime(kQ0 - 2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(prime_factors(kQ0 - 1), (std::vector<u64>{2, 3, 19, 1447, 73643}));
  EXPECT_EQ(kDilithiumQromQ % 8, 5u);
}

TEST(MakeRing, SmallContext) {
  const auto ctx = make_ring(17, 4);
  EXPECT_EQ(ctx.generator(), 3u);
  EXPECT_EQ(ctx.root(), 9u);
  EXPECT_EQ(ctx.mod().pow(9, 4), 16u);
  EXPECT_EQ(ctx.mod().pow(9, 8), 1u);
  EXPECT_EQ(ctx.mod().mul(ctx.n_inv(), 4), 1u);
}

TEST(MakeRing, RootHasExactOrder) {
  // Reference generators and roots from tests/oracles/derive.py.
  const std::array<std::tuple<u64, u64, u64, u64>, 2> cases = {{
      {kQ0, 512, 5, 10432589343127},
      {kDilithiumQ, 256, 10, 1921994},
  }};
  for (const auto& [q, n, g, w] : cases) {
    const auto ctx = make_ring(q, n);
    EXPECT_EQ(ctx.generator(), g);
    EXPECT_EQ(ctx.root(), w);
    EXPECT_EQ(ctx.mod().pow(w, n), q - 1);
    EXPECT_EQ(ctx.mod().pow(w, 2 * n), 1u);
  }
}

TEST(MakeRing, Errors) {
  EXPECT_EQ(code_of([] { make_ring(13, 4); }), ErrorCode::BadCongruence);
  EXPECT_EQ(code_of([] { make_ring(kDilithiumQromQ, 512); }), ErrorCode::BadCongruence);
  EXPECT_EQ(code_of([] { make_ring(15, 4); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { make_ring(17, 6); }), ErrorCode::NotPowerOfTwo);
}

TEST(Ntt, SmallExamples) {
  const auto ctx = make_ring(17, 4);
  EXPECT_EQ(ntt_forward(ctx, RingElement(4)), RingElement(4));
  EXPECT_EQ(ntt_forward(ctx, RingElement(std::vector<u64>{1, 0, 0, 0})), RingElement(std::vector<u64>{1, 1, 1, 1}));
  EXPECT_EQ(ntt_forward(ctx, RingElement(std::vector<u64>{0, 1, 0, 0})), RingElement(std::vector<u64>{9, 15, 8, 2}));
}

TEST(Ntt, ExhaustiveSmallRing) {
  const auto ctx = make_ring(17, 4);
  RingElement a(4);
  std::mt19937_64 rng(3);
  for (u64 i = 0; i < 17 * 17 * 17 * 17; ++i) {
    ASSERT_EQ(ntt_inverse(ctx, ntt_forward(ctx, a)), a);
    const RingElement b = random_element(rng, 17, 4);
    ASSERT_EQ(ring_mul(ctx, a, b), schoolbook_mul(a, b, 17));
    for (std::size_t x = 0; x < 4; ++x) {
      if (++a[x] < 17) break;
      a[x] = 0;
    }
  }
}

TEST(Ntt, MatchesSchoolbookAtFullSize) {
  const auto ctx = make_ring(kQ0, 512);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_element(rng, kQ0, 512);
    const auto b = random_element(rng, kQ0, 512);
    ASSERT_EQ(ntt_inverse(ctx, ntt_forward(ctx, a)), a);
    const auto c = ring_mul(ctx, a, b);
    ASSERT_EQ(c, schoolbook_mul(a, b, kQ0));
    ASSERT_EQ(ntt_forward(ctx, c), pointwise_mul(ctx, ntt_forward(ctx, a), ntt_forward(ctx, b)));
  }
}

TEST(Ntt, FrozenProduct) {
  // a_i = 12345 i^2 + 17, b_i = 987654321 i + 3; product from tests/oracles/derive.py.
  const auto ctx = make_ring(kQ0, 512);
  RingElement a(512), b(512);
  for (u64 i = 0; i < 512; ++i) {
    a[i] = (i * i * 12345 + 17) % kQ0;
    b[i] = (i * 987654321 + 3) % kQ0;
  }
  const auto c = ring_mul(ctx, a, b);
  EXPECT_EQ(c[0], 11589668134534u);
  EXPECT_EQ(c[1], 10300961270890u);
  EXPECT_EQ(c[255], 6017918786683u);
  EXPECT_EQ(c[511], 1576320249469u);
}

TEST(Ntt, NegacyclicWrap) {
  const auto ctx = make_ring(kQ0, 512);
  RingElement x(512), x_last(512), one(512);
  x[1] = 1;
  x_last[511] = 1;
  one[0] = 1;
  RingElement minus_one(512);
  minus_one[0] = kQ0 - 1;
  EXPECT_EQ(ring_mul(ctx, x, x_last), minus_one);
  std::mt19937_64 rng(5);
  const auto a = random_element(rng, kQ0, 512);
  EXPECT_EQ(ring_mul(ctx, a, one), a);
}

TEST(Ntt, DimensionMismatch) {
  const auto ctx = make_ring(17, 4);
  EXPECT_EQ(code_of([&] { ntt_forward(ctx, RingElement(8)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { ring_mul(ctx, RingElement(4), RingElement(2)); }), ErrorCode::DimensionMismatch);
}

TEST(ModPm, Ranges) {
  EXPECT_EQ(mod_pm(0, 17), 0);
  EXPECT_EQ(mod_pm(9, 17), -8);
  EXPECT_EQ(mod_pm(8, 17), 8);
  EXPECT_EQ(mod_pm(4, 8), 4);
  EXPECT_EQ(mod_pm(5, 8), -3);
  for (u64 r = 0; r < 17; ++r) {
    EXPECT_LE(std::abs(mod_pm(r, 17)), 8);
  }
}

TEST(InfNorm, Basics) {
  const auto ctx = make_ring(17, 4);
  EXPECT_EQ(inf_norm(ctx, RingVector(3, 4)), 0u);
  EXPECT_EQ(inf_norm(ctx, RingElement(std::vector<u64>{16, 0, 0, 0})), 1u);
  EXPECT_EQ(inf_norm(ctx, RingElement(std::vector<u64>{0, 8, 0, 0})), 8u);
  RingVector v(2, 4);
  v[1][2] = 14;
  EXPECT_EQ(inf_norm(ctx, v), 3u);
}

TEST(Xof, MatchesReference) {
  std::array<std::uint8_t, 32> seed{};
  for (std::size_t i = 0; i < 32; ++i) seed[i] = static_cast<std::uint8_t>(i);
  XofStream s(seed, "rho");
  std::array<std::uint8_t, 16> out{};
  s.read(out);
  const std::array<std::uint8_t, 16> expect = {0xb8, 0x54, 0x25, 0xd4, 0x0f, 0x8b, 0xb9, 0x4b,
                                               0x75, 0x3c, 0x8f, 0x9a, 0x1f, 0x81, 0x2b, 0xcb};
  EXPECT_EQ(out, expect);
}

TEST(Xof, DeterministicAndTagSeparated) {
  const std::array<std::uint8_t, 4> seed = {1, 2, 3, 4};
  XofStream a(seed, "x"), b(seed, "x"), c(seed, "y");
  std::array<std::uint8_t, 3000> ra{}, rb{}, rc{};
  a.read(ra);
  b.read(rb);
  c.read(rc);
  EXPECT_EQ(ra, rb);
  EXPECT_NE(ra, rc);
}

TEST(Sampling, UniformMatchesReference) {
  std::array<std::uint8_t, 32> seed{};
  for (std::size_t i = 0; i < 32; ++i) seed[i] = static_cast<std::uint8_t>(i);
  const auto ctx = make_ring(kQ0, 512);
  XofStream s(seed, make_tag("A", 0, 0));
  const auto e = sample_uniform_ring(s, ctx);
  EXPECT_EQ(e[0], 11871025176772u);
  EXPECT_EQ(e[1], 5172506119705u);
  EXPECT_EQ(e[2], 8819442670514u);
  EXPECT_EQ(e[3], 3211215864533u);
  for (u64 c : e.coeffs()) EXPECT_LT(c, kQ0);
}

TEST(Sampling, BoundedMatchesReference) {
  const std::array<std::uint8_t, 32> seed{};
  const auto ctx = make_ring(kQ0, 512);
  XofStream s(seed, "test");
  const auto e = sample_bounded(s, ctx, 2);
  const std::array<i64, 8> expect = {1, -2, -2, 2, -1, 1, -1, 0};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(mod_pm(e[i], kQ0), expect[i]) << i;
  }
}

TEST(Sampling, BoundedFrequencies) {
  const std::array<std::uint8_t, 8> seed = {9};
  const auto ctx = make_ring(kQ0, 512);
  XofStream s(seed, "freq");
  std::map<i64, int> counts;
  int total = 0;
  while (total < 100000) {
    const auto e = sample_bounded(s, ctx, 2);
    for (u64 c : e.coeffs()) {
      ++counts[mod_pm(c, kQ0)];
      if (++total == 100000) break;
    }
  }
  ASSERT_EQ(counts.size(), 5u);
  for (const auto& [v, c] : counts) {
    EXPECT_GE(v, -2);
    EXPECT_LE(v, 2);
    EXPECT_NEAR(c / 100000.0, 0.2, 0.01) << v;
  }
}

TEST(Sampling, BoundedNormAndErrors) {
  const std::array<std::uint8_t, 1> seed = {0};
  const auto ctx = make_ring(kQ0, 512);
  XofStream s(seed, "n");
  for (u64 eta : {1u, 2u, 4u, 7u, 131071u}) {
    EXPECT_LE(inf_norm(ctx, sample_bounded(s, ctx, eta)), eta);
  }
  EXPECT_EQ(code_of([&] { sample_bounded(s, ctx, 0); }), ErrorCode::BadParams);
}

}  // namespace
}  // namespace nativedil
