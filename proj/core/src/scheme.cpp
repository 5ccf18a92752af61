#include "nativedil/scheme.hpp"

#include <algorithm>
#include <string>

#include "nativedil/codec.hpp"
#include "nativedil/error.hpp"

namespace nativedil {

namespace {

constexpr std::size_t kMessageDigestBytes = 64;
constexpr std::size_t kChallengeDigestBytes = 64;

RingContext checked_ring(const ParameterSet& params) {
  check_scheme_params(params);
  return make_ring(params.q, params.n);
}

void fail(const std::string& what) { throw Error(ErrorCode::BadParams, what); }

RingVector sample_vector(XofStream& stream, const RingContext& ctx, std::size_t len, u64 eta) {
  std::vector<RingElement> elems;
  elems.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    elems.push_back(sample_bounded(stream, ctx, eta));
  }
  return RingVector(std::move(elems));
}

// Multiplies every entry of v (coefficient domain) by c, given c in the NTT domain.
RingVector scale(const RingContext& ctx, const RingElement& c_hat, const RingVector& v) {
  RingVector out = ntt_forward(ctx, v);
  for (auto& e : out) {
    e = pointwise_mul(ctx, c_hat, e);
    ctx.inverse_in_place(e.coeffs());
  }
  return out;
}

RingMatrix to_ntt(const RingContext& ctx, RingMatrix a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      ctx.forward_in_place(a.at(i, j).coeffs());
    }
  }
  return a;
}

// a_hat holds NTT-domain entries; v and the result are in the coefficient domain.
RingVector mul_ntt_matrix(const RingContext& ctx, const RingMatrix& a_hat, const RingVector& v) {
  if (a_hat.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix columns do not match vector length");
  }
  const RingVector v_hat = ntt_forward(ctx, v);
  RingVector out(a_hat.rows(), ctx.n());
  const Modulus& mod = ctx.mod();
  for (std::size_t i = 0; i < a_hat.rows(); ++i) {
    auto acc = out[i].coeffs();
    for (std::size_t j = 0; j < a_hat.cols(); ++j) {
      const auto lhs = a_hat.at(i, j).coeffs();
      const auto rhs = v_hat[j].coeffs();
      for (std::size_t x = 0; x < ctx.n(); ++x) {
        acc[x] = mod.add(acc[x], mod.mul(lhs[x], rhs[x]));
      }
    }
    ctx.inverse_in_place(acc);
  }
  return out;
}

Bytes concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  Bytes out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Decomposition decompose(u64 r, u64 alpha, u64 q) {
  if (alpha == 0 || alpha % 2 != 0 || (q - 1) % alpha != 0) {
    throw Error(ErrorCode::BadParams, "decompose needs an even alpha dividing q - 1");
  }
  const i64 low = mod_pm(r, alpha);
  const i64 diff = static_cast<i64>(r) - low;
  if (diff == static_cast<i64>(q - 1)) {
    return {0, low - 1};
  }
  return {static_cast<u64>(diff) / alpha, low};
}

RingVector high_bits(const RingContext& ctx, const RingVector& v, u64 alpha) {
  RingVector out = v;
  for (auto& e : out) {
    for (auto& c : e.coeffs()) {
      c = decompose(c, alpha, ctx.q()).high;
    }
  }
  return out;
}

RingVector low_bits(const RingContext& ctx, const RingVector& v, u64 alpha) {
  RingVector out = v;
  for (auto& e : out) {
    for (auto& c : e.coeffs()) {
      c = ctx.mod().from_signed(decompose(c, alpha, ctx.q()).low);
    }
  }
  return out;
}

RingMatrix expand_a(const RingContext& ctx, std::span<const std::uint8_t> rho, const ParameterSet& params) {
  RingMatrix a(params.k, params.l, ctx.n());
  for (std::size_t i = 0; i < params.k; ++i) {
    for (std::size_t j = 0; j < params.l; ++j) {
      XofStream stream(rho, make_tag("A", static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)));
      a.at(i, j) = sample_uniform_ring(stream, ctx);
    }
  }
  return a;
}

RingVector mat_vec_mul(const RingContext& ctx, const RingMatrix& a, const RingVector& v) {
  return mul_ntt_matrix(ctx, to_ntt(ctx, a), v);
}

RingElement sample_in_ball(std::span<const std::uint8_t> seed, const RingContext& ctx, u64 tau) {
  const std::size_t n = ctx.n();
  if (tau > n) {
    throw Error(ErrorCode::BadParams, "tau exceeds the ring dimension");
  }
  XofStream stream(seed, "ball");
  const unsigned width = ceil_log2(n);
  RingElement c(n);
  for (std::size_t i = n - tau; i < n; ++i) {
    u64 j = 0;
    do {
      j = stream.read_bits(width);
    } while (j > i);
    const bool negative = stream.read_bits(1) != 0;
    c[i] = c[j];
    c[j] = negative ? ctx.q() - 1 : 1;
  }
  return c;
}

RingElement hash_to_challenge(std::span<const std::uint8_t> input, const RingContext& ctx, u64 tau) {
  const Bytes digest = shake256(input, kChallengeDigestBytes);
  return sample_in_ball(digest, ctx, tau);
}

bool in_ball(const RingContext& ctx, const RingElement& c, u64 tau) {
  if (c.size() != ctx.n()) {
    return false;
  }
  u64 weight = 0;
  for (u64 x : c.coeffs()) {
    if (x == 1 || x == ctx.q() - 1) {
      ++weight;
    } else if (x != 0) {
      return false;
    }
  }
  return weight == tau;
}

Bytes pack_w1(const RingVector& w1, const ParameterSet& params) {
  const unsigned width = ceil_log2((params.q - 1) / (2 * params.gamma2));
  BitWriter writer;
  for (const auto& e : w1) {
    for (u64 c : e.coeffs()) {
      writer.write(c, width);
    }
  }
  return std::move(writer).finish();
}

void check_scheme_params(const ParameterSet& p) {
  if (p.n == 0 || !is_power_of_two(p.n)) fail("n must be a power of two");
  if (!is_prime(p.q) || p.q == 2) fail("q must be an odd prime");
  if (p.q % (2 * p.n) != 1) fail("q must be 1 mod 2n");
  if (p.k == 0 || p.l == 0) fail("k and l must be positive");
  if (p.eta == 0) fail("eta must be positive");
  if (p.gamma2 == 0 || (p.q - 1) % (2 * p.gamma2) != 0) fail("q must be 1 mod 2*gamma2");
  if (p.q <= 4 * p.gamma2) fail("q must exceed 4*gamma2");
  if (p.beta != p.tau * p.eta) fail("beta must equal tau*eta");
  if (p.gamma1 <= p.beta) fail("gamma1 must exceed beta");
  if (p.gamma2 <= p.beta) fail("gamma2 must exceed beta");
  if (p.tau == 0 || p.tau > p.n) fail("tau must be in 1..n");
  if (2 * p.gamma1 >= p.q) fail("gamma1 must be below q/2");
}

Scheme::Scheme(ParameterSet params) : params_(std::move(params)), ring_(checked_ring(params_)) {}

KeyPair Scheme::keygen(std::span<const std::uint8_t, 32> seed) const {
  KeyPair kp;
  XofStream(seed, "rho").read(kp.sk.rho);
  XofStream(seed, "key").read(kp.sk.key);
  XofStream s1_stream(seed, "s1");
  XofStream s2_stream(seed, "s2");
  kp.sk.s1 = sample_vector(s1_stream, ring_, params_.l, params_.eta);
  kp.sk.s2 = sample_vector(s2_stream, ring_, params_.k, params_.eta);

  const RingMatrix a = expand_a(ring_, kp.sk.rho, params_);
  kp.sk.t = ring_add(ring_, mat_vec_mul(ring_, a, kp.sk.s1), kp.sk.s2);
  kp.pk.rho = kp.sk.rho;
  kp.pk.t = kp.sk.t;
  return kp;
}

SignResult Scheme::sign(const SecretKey& sk, std::span<const std::uint8_t> message,
                        std::uint32_t max_attempts) const {
  const RingContext& ctx = ring_;
  const u64 alpha = 2 * params_.gamma2;
  const u64 z_bound = params_.gamma1 - params_.beta;
  const u64 low_bound = params_.gamma2 - params_.beta;

  const RingMatrix a_hat = to_ntt(ctx, expand_a(ctx, sk.rho, params_));
  const Bytes seed = concat(sk.key, shake256(message, kMessageDigestBytes));

  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    XofStream y_stream(seed, make_tag("y", attempt));
    const RingVector y = sample_vector(y_stream, ctx, params_.l, params_.gamma1 - 1);
    const RingVector w = mul_ntt_matrix(ctx, a_hat, y);
    const RingVector w1 = high_bits(ctx, w, alpha);
    const RingElement c = hash_to_challenge(concat(pack_w1(w1, params_), message), ctx, params_.tau);
    const RingElement c_hat = ntt_forward(ctx, c);

    RingVector z = ring_add(ctx, y, scale(ctx, c_hat, sk.s1));
    if (inf_norm(ctx, z) >= z_bound) {
      continue;
    }
    const RingVector r = ring_sub(ctx, w, scale(ctx, c_hat, sk.s2));
    if (inf_norm(ctx, low_bits(ctx, r, alpha)) >= low_bound) {
      continue;
    }
    return {Signature{std::move(z), c}, attempt + 1};
  }
  throw Error(ErrorCode::MaxAttemptsExceeded,
              "no signature after " + std::to_string(max_attempts) + " attempts");
}

bool Scheme::verify(const PublicKey& pk, std::span<const std::uint8_t> message, const Signature& sig) const {
  const RingContext& ctx = ring_;
  if (sig.z.size() != params_.l || pk.t.size() != params_.k) {
    return false;
  }
  for (const auto& e : sig.z) {
    if (e.size() != ctx.n()) {
      return false;
    }
  }
  if (!in_ball(ctx, sig.c, params_.tau)) {
    return false;
  }
  if (inf_norm(ctx, sig.z) >= params_.gamma1 - params_.beta) {
    return false;
  }
  const RingMatrix a = expand_a(ctx, pk.rho, params_);
  const RingVector az = mat_vec_mul(ctx, a, sig.z);
  const RingVector w_prime = ring_sub(ctx, az, scale(ctx, ntt_forward(ctx, sig.c), pk.t));
  const RingVector w1 = high_bits(ctx, w_prime, 2 * params_.gamma2);
  const RingElement c = hash_to_challenge(concat(pack_w1(w1, params_), message), ctx, params_.tau);
  return c == sig.c;
}

}  // namespace nativedil
