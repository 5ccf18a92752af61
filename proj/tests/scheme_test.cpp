#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <string>

#include "nativedil/codec.hpp"
#include "nativedil/error.hpp"
#include "nativedil/scheme.hpp"

namespace nativedil {
namespace {

const ParameterSet& ours_sl2() { return find_builtin("ours-sl2")->params; }

Seed seed_from(std::uint64_t v) {
  Seed s{};
  for (int i = 0; i < 8; ++i) s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Bytes message(int i) {
  const std::string m = "message #" + std::to_string(i);
  return Bytes(m.begin(), m.end());
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadParams;
}

TEST(Decompose, ExhaustiveSmallModulus) {
  // (high, low) for r = 0..16 at q = 17, 2 gamma2 = 8, from tests/oracles/derive.py.
  const std::vector<std::pair<u64, i64>> expect = {{0, 0}, {0, 1},  {0, 2},  {0, 3},  {0, 4},  {1, -3},
                                                   {1, -2}, {1, -1}, {1, 0},  {1, 1},  {1, 2},  {1, 3},
                                                   {1, 4}, {0, -4}, {0, -3}, {0, -2}, {0, -1}};
  for (u64 r = 0; r < 17; ++r) {
    const auto d = decompose(r, 8, 17);
    EXPECT_EQ(d.high, expect[r].first) << r;
    EXPECT_EQ(d.low, expect[r].second) << r;
    EXPECT_EQ(Modulus(17).from_signed(static_cast<i64>(8 * d.high) + d.low), r);
    EXPECT_LE(std::abs(d.low), 4);
    EXPECT_LT(d.high, 2u);
  }
  EXPECT_EQ(code_of([] { decompose(3, 6, 17); }), ErrorCode::BadParams);
}

TEST(Decompose, RecompositionAtFullSize) {
  const auto& p = ours_sl2();
  const auto ctx = make_ring(p.q, p.n);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<u64> d(0, p.q - 1);
  RingVector v(3, p.n);
  for (auto& e : v)
    for (auto& c : e.coeffs()) c = d(rng);
  const u64 alpha = 2 * p.gamma2;
  const auto hi = high_bits(ctx, v, alpha);
  const auto lo = low_bits(ctx, v, alpha);
  EXPECT_LE(inf_norm(ctx, lo), p.gamma2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < p.n; ++j) {
      ASSERT_LT(hi[i][j], (p.q - 1) / alpha);
      ASSERT_EQ(ctx.mod().add(ctx.mod().mul(alpha % p.q, hi[i][j]), lo[i][j]), v[i][j]);
    }
  }
}

TEST(SampleInBall, MatchesReference) {
  const auto ctx = make_ring(kQ0, 512);
  const std::string seed = "abc";
  const auto c = sample_in_ball(Bytes(seed.begin(), seed.end()), ctx, 40);
  const std::vector<std::pair<std::size_t, int>> expect = {
      {8, 1},    {13, -1},  {18, 1},   {30, -1},  {47, -1},  {63, 1},   {76, 1},   {97, 1},
      {102, 1},  {105, -1}, {110, 1},  {111, -1}, {133, 1},  {139, -1}, {151, 1},  {204, -1},
      {239, -1}, {274, 1},  {282, 1},  {291, -1}, {292, 1},  {294, 1},  {300, 1},  {315, 1},
      {322, 1},  {327, -1}, {357, -1}, {365, -1}, {372, 1},  {400, -1}, {401, 1},  {403, 1},
      {406, 1},  {423, -1}, {428, 1},  {432, -1}, {453, -1}, {460, 1},  {481, 1},  {491, -1}};
  std::vector<std::pair<std::size_t, int>> got;
  for (std::size_t i = 0; i < 512; ++i) {
    if (c[i] != 0) got.emplace_back(i, c[i] == 1 ? 1 : -1);
  }
  EXPECT_EQ(got, expect);

  const std::string hello = "hello";
  const auto h = hash_to_challenge(Bytes(hello.begin(), hello.end()), ctx, 40);
  EXPECT_EQ(h[20], kQ0 - 1);
  EXPECT_EQ(h[47], 1u);
  EXPECT_EQ(h[77], kQ0 - 1);
  EXPECT_TRUE(in_ball(ctx, h, 40));
}

TEST(SampleInBall, AlwaysInBall) {
  const auto ctx = make_ring(kQ0, 512);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto s = seed_from(i);
    const auto c = sample_in_ball(s, ctx, 40);
    ASSERT_TRUE(in_ball(ctx, c, 40));
    ASSERT_EQ(c, sample_in_ball(s, ctx, 40));
  }
}

TEST(SampleInBall, UniformOnSmallBall) {
  // n = 8, tau = 2: |B_2| = 2^2 * C(8, 2) = 112 cells.
  const auto ctx = make_ring(17, 8);
  constexpr int kDraws = 1000000;
  std::map<std::vector<u64>, int> cells;
  for (int i = 0; i < kDraws; ++i) {
    const auto s = seed_from(static_cast<std::uint64_t>(i));
    const auto c = sample_in_ball(s, ctx, 2);
    ++cells[std::vector<u64>(c.coeffs().begin(), c.coeffs().end())];
  }
  ASSERT_EQ(cells.size(), 112u);
  const double p = 1.0 / 112.0;
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  // 3 sigma per cell; with 112 cells a few excursions are expected, so also
  // bound the count of cells outside 3 sigma.
  int outside = 0;
  for (const auto& [cell, n] : cells) {
    if (std::abs(n - mean) > 3 * sigma) ++outside;
    EXPECT_LT(std::abs(n - mean), 5 * sigma);
  }
  EXPECT_LE(outside, 3);
}

TEST(ExpandA, DeterministicAndSeedSensitive) {
  const auto& p = ours_sl2();
  const auto ctx = make_ring(p.q, p.n);
  Seed rho = seed_from(42);
  const auto a = expand_a(ctx, rho, p);
  EXPECT_EQ(a, expand_a(ctx, rho, p));
  rho[31] ^= 1;
  EXPECT_NE(a, expand_a(ctx, rho, p));
  for (std::size_t i = 0; i < p.k; ++i)
    for (std::size_t j = 0; j < p.l; ++j)
      for (u64 c : a.at(i, j).coeffs()) ASSERT_LT(c, p.q);
}

TEST(Scheme, RejectsUnusableParameters) {
  EXPECT_EQ(code_of([] { Scheme s(find_builtin("qrom-rec")->params); }), ErrorCode::BadParams);
  auto p = ours_sl2();
  p.beta = 79;
  EXPECT_EQ(code_of([&] { Scheme s(p); }), ErrorCode::BadParams);
  p = ours_sl2();
  p.gamma2 = 441857;
  EXPECT_EQ(code_of([&] { Scheme s(p); }), ErrorCode::BadParams);
}

TEST(Scheme, KeygenProperties) {
  const Scheme scheme(ours_sl2());
  const auto& p = scheme.params();
  const auto& ctx = scheme.ring();
  const auto kp = scheme.keygen(seed_from(1));
  EXPECT_LE(inf_norm(ctx, kp.sk.s1), p.eta);
  EXPECT_LE(inf_norm(ctx, kp.sk.s2), p.eta);
  const auto as1 = mat_vec_mul(ctx, expand_a(ctx, kp.pk.rho, p), kp.sk.s1);
  EXPECT_EQ(ring_sub(ctx, kp.pk.t, as1), kp.sk.s2);
  EXPECT_EQ(serialize_public_key(kp.pk, p), serialize_public_key(scheme.keygen(seed_from(1)).pk, p));
  EXPECT_NE(kp.pk, scheme.keygen(seed_from(2)).pk);
}

TEST(Scheme, SignVerifyRoundtrips) {
  const Scheme scheme(ours_sl2());
  const auto& p = scheme.params();
  const auto kp = scheme.keygen(seed_from(3));
  const auto other = scheme.keygen(seed_from(4));
  for (int i = 0; i < 100; ++i) {
    const auto m = message(i);
    const auto r = scheme.sign(kp.sk, m);
    ASSERT_GE(r.attempts, 1u);
    ASSERT_LT(inf_norm(scheme.ring(), r.signature.z), p.gamma1 - p.beta);
    ASSERT_TRUE(scheme.verify(kp.pk, m, r.signature));
    ASSERT_FALSE(scheme.verify(other.pk, m, r.signature));
    ASSERT_FALSE(scheme.verify(kp.pk, message(i + 1000), r.signature));
  }
  const auto m = message(0);
  EXPECT_EQ(scheme.sign(kp.sk, m).signature, scheme.sign(kp.sk, m).signature);
}

TEST(Scheme, AttemptCap) {
  const Scheme scheme(ours_sl2());
  const auto kp = scheme.keygen(seed_from(5));
  int capped = 0;
  for (int i = 0; i < 20 && capped == 0; ++i) {
    try {
      scheme.sign(kp.sk, message(i), 1);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MaxAttemptsExceeded);
      ++capped;
    }
  }
  EXPECT_EQ(capped, 1);
}

TEST(Codec, RoundtripsAndSizes) {
  const Scheme scheme(ours_sl2());
  const auto& p = scheme.params();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto kp = scheme.keygen(seed_from(100 + i));
    const auto pk = serialize_public_key(kp.pk, p);
    const auto sk = serialize_secret_key(kp.sk, p);
    EXPECT_EQ(pk.size(), public_key_bytes(p));
    EXPECT_EQ(sk.size(), secret_key_bytes(p));
    EXPECT_EQ(deserialize_public_key(pk, p), kp.pk);
    EXPECT_EQ(deserialize_secret_key(sk, p), kp.sk);
    const auto sig = scheme.sign(kp.sk, message(static_cast<int>(i))).signature;
    const auto bytes = serialize_signature(sig, p);
    EXPECT_EQ(bytes.size(), signature_bytes(p));
    EXPECT_EQ(deserialize_signature(bytes, p), sig);
  }
  // 6-byte header + rho + 512 * 10 coefficients at 44 bits.
  EXPECT_EQ(public_key_bytes(p), 6u + 32 + 512 * 10 * 44 / 8);
  EXPECT_EQ(ceil_log2(2 * p.gamma1), 19u);
}

TEST(Codec, RejectsDamagedInput) {
  const Scheme scheme(ours_sl2());
  const auto& p = scheme.params();
  const auto kp = scheme.keygen(seed_from(7));
  const auto sig = serialize_signature(scheme.sign(kp.sk, message(1)).signature, p);

  Bytes cut(sig.begin(), sig.end() - 1);
  EXPECT_EQ(code_of([&] { deserialize_signature(cut, p); }), ErrorCode::TruncatedInput);
  Bytes longer = sig;
  longer.push_back(0);
  EXPECT_EQ(code_of([&] { deserialize_signature(longer, p); }), ErrorCode::NonCanonical);
  Bytes magic = sig;
  magic[0] ^= 1;
  EXPECT_EQ(code_of([&] { deserialize_signature(magic, p); }), ErrorCode::BadMagic);
  Bytes version = sig;
  version[4] = 2;
  EXPECT_EQ(code_of([&] { deserialize_signature(version, p); }), ErrorCode::BadMagic);
  Bytes id = sig;
  id[5] = find_builtin("ours-sl3")->params_id;
  EXPECT_EQ(code_of([&] { deserialize_signature(id, p); }), ErrorCode::BadParamsId);
  EXPECT_EQ(code_of([&] { deserialize_signature(Bytes{'N', 'D'}, p); }), ErrorCode::TruncatedInput);
  EXPECT_EQ(code_of([&] { deserialize_public_key(sig, p); }), ErrorCode::BadMagic);

  // Re-encode the challenge with its first two positions swapped.
  const unsigned zw = ceil_log2(2 * p.gamma1);
  const unsigned pw = log2_exact(p.n);
  BitReader r(std::span<const std::uint8_t>(sig).subspan(kHeaderBytes));
  BitWriter w;
  w.write_bytes(std::span<const std::uint8_t>(sig).first(kHeaderBytes));
  for (std::size_t i = 0; i < p.l * p.n; ++i) w.write(r.read(zw), zw);
  std::vector<std::pair<u64, u64>> pairs;
  for (std::size_t i = 0; i < p.tau; ++i) {
    const u64 pos = r.read(pw);
    pairs.emplace_back(pos, r.read(1));
  }
  std::swap(pairs[0], pairs[1]);
  for (const auto& [pos, sign] : pairs) {
    w.write(pos, pw);
    w.write(sign, 1);
  }
  const Bytes reordered = std::move(w).finish();
  ASSERT_EQ(reordered.size(), sig.size());
  EXPECT_EQ(code_of([&] { deserialize_signature(reordered, p); }), ErrorCode::NonCanonical);

  // A z coefficient outside (-gamma1, gamma1].
  Bytes z_out = sig;
  z_out[kHeaderBytes] = 0xff;
  z_out[kHeaderBytes + 1] = 0xff;
  z_out[kHeaderBytes + 2] |= 0x07;
  EXPECT_EQ(code_of([&] { deserialize_signature(z_out, p); }), ErrorCode::NonCanonical);
}

TEST(Codec, PackW1IsInjective) {
  const auto& p = ours_sl2();
  RingVector a(p.k, p.n), b(p.k, p.n);
  b[3][7] = 1;
  EXPECT_NE(pack_w1(a, p), pack_w1(b, p));
  a[3][7] = (p.q - 1) / (2 * p.gamma2) - 1;
  b[3][7] = a[3][7] - 1;
  EXPECT_NE(pack_w1(a, p), pack_w1(b, p));
}

}  // namespace
}  // namespace nativedil
