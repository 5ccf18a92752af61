#include "nativedil/ring.hpp"

#include <algorithm>
#include <string>

#include "nativedil/error.hpp"

namespace nativedil {

namespace {

std::size_t reverse_bits(std::size_t x, unsigned bits) {
  std::size_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | ((x >> i) & 1);
  }
  return r;
}

void check_dim(const RingContext& ctx, std::size_t size) {
  if (size != ctx.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(ctx.n()) + " coefficients, got " + std::to_string(size));
  }
}

void check_len(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, "vector lengths differ");
  }
}

}  // namespace

bool RingElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

RingContext::RingContext(u64 q, std::size_t n) : mod_(q), n_(n) {
  generator_ = smallest_generator(q);
  root_ = mod_.pow(generator_, (q - 1) / (2 * n));
  if (mod_.pow(root_, 2 * n) != 1 || mod_.pow(root_, n) != q - 1) {
    throw Error(ErrorCode::BadCongruence, "no primitive 2n-th root of unity");
  }
  n_inv_ = mod_.inv(n % q);
  n_inv_shoup_ = mod_.shoup(n_inv_);

  const unsigned bits = log2_exact(n);
  bitrev_.resize(n);
  zetas_.resize(n);
  inv_zetas_.resize(n);
  zetas_shoup_.resize(n);
  inv_zetas_shoup_.resize(n);
  const u64 root_inv = mod_.inv(root_);
  for (std::size_t i = 0; i < n; ++i) {
    bitrev_[i] = reverse_bits(i, bits);
    zetas_[i] = mod_.pow(root_, bitrev_[i]);
    inv_zetas_[i] = mod_.pow(root_inv, bitrev_[i]);
    zetas_shoup_[i] = mod_.shoup(zetas_[i]);
    inv_zetas_shoup_[i] = mod_.shoup(inv_zetas_[i]);
  }
}

RingContext make_ring(u64 q, u64 n) {
  if (n == 0 || !is_power_of_two(n)) {
    throw Error(ErrorCode::NotPowerOfTwo, std::to_string(n) + " is not a power of two");
  }
  if (!is_prime(q) || q == 2) {
    throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not an odd prime");
  }
  if (q >= Modulus::kMaxModulus) {
    throw Error(ErrorCode::BadParams, "modulus exceeds 2^62");
  }
  if (q % (2 * n) != 1) {
    throw Error(ErrorCode::BadCongruence,
                std::to_string(q) + " != 1 mod " + std::to_string(2 * n));
  }
  return RingContext(q, static_cast<std::size_t>(n));
}

// Cooley-Tukey butterflies leave a[i] = p(w^(2 brv(i) + 1)); the final
// permutation restores natural order.
void RingContext::forward_in_place(std::span<u64> a) const {
  check_dim(*this, a.size());
  std::size_t k = 0;
  for (std::size_t len = n_ / 2; len >= 1; len >>= 1) {
    for (std::size_t start = 0; start < n_; start += 2 * len) {
      ++k;
      const u64 z = zetas_[k];
      const u64 zs = zetas_shoup_[k];
      for (std::size_t j = start; j < start + len; ++j) {
        const u64 t = mod_.mul_shoup(a[j + len], z, zs);
        a[j + len] = mod_.sub(a[j], t);
        a[j] = mod_.add(a[j], t);
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) {
      std::swap(a[i], a[bitrev_[i]]);
    }
  }
}

void RingContext::inverse_in_place(std::span<u64> a) const {
  check_dim(*this, a.size());
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) {
      std::swap(a[i], a[bitrev_[i]]);
    }
  }
  for (std::size_t len = 1; len < n_; len <<= 1) {
    const std::size_t first = n_ / (2 * len);
    for (std::size_t start = 0, block = 0; start < n_; start += 2 * len, ++block) {
      const u64 z = inv_zetas_[first + block];
      const u64 zs = inv_zetas_shoup_[first + block];
      for (std::size_t j = start; j < start + len; ++j) {
        const u64 u = a[j];
        const u64 v = a[j + len];
        a[j] = mod_.add(u, v);
        a[j + len] = mod_.mul_shoup(mod_.sub(u, v), z, zs);
      }
    }
  }
  for (auto& c : a) {
    c = mod_.mul_shoup(c, n_inv_, n_inv_shoup_);
  }
}

RingElement ntt_forward(const RingContext& ctx, const RingElement& a) {
  RingElement out = a;
  ctx.forward_in_place(out.coeffs());
  return out;
}

RingElement ntt_inverse(const RingContext& ctx, const RingElement& a_hat) {
  RingElement out = a_hat;
  ctx.inverse_in_place(out.coeffs());
  return out;
}

RingElement pointwise_mul(const RingContext& ctx, const RingElement& a, const RingElement& b) {
  check_dim(ctx, a.size());
  check_dim(ctx, b.size());
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    out[i] = ctx.mod().mul(a[i], b[i]);
  }
  return out;
}

RingElement ring_mul(const RingContext& ctx, const RingElement& a, const RingElement& b) {
  return ntt_inverse(ctx, pointwise_mul(ctx, ntt_forward(ctx, a), ntt_forward(ctx, b)));
}

RingElement ring_add(const RingContext& ctx, const RingElement& a, const RingElement& b) {
  check_dim(ctx, a.size());
  check_dim(ctx, b.size());
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    out[i] = ctx.mod().add(a[i], b[i]);
  }
  return out;
}

RingElement ring_sub(const RingContext& ctx, const RingElement& a, const RingElement& b) {
  check_dim(ctx, a.size());
  check_dim(ctx, b.size());
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    out[i] = ctx.mod().sub(a[i], b[i]);
  }
  return out;
}

RingVector ntt_forward(const RingContext& ctx, const RingVector& v) {
  RingVector out = v;
  for (auto& e : out) {
    ctx.forward_in_place(e.coeffs());
  }
  return out;
}

RingVector ntt_inverse(const RingContext& ctx, const RingVector& v) {
  RingVector out = v;
  for (auto& e : out) {
    ctx.inverse_in_place(e.coeffs());
  }
  return out;
}

RingVector ring_add(const RingContext& ctx, const RingVector& a, const RingVector& b) {
  check_len(a.size(), b.size());
  RingVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = ring_add(ctx, a[i], b[i]);
  }
  return out;
}

RingVector ring_sub(const RingContext& ctx, const RingVector& a, const RingVector& b) {
  check_len(a.size(), b.size());
  RingVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = ring_sub(ctx, a[i], b[i]);
  }
  return out;
}

i64 mod_pm(u64 r, u64 alpha) noexcept {
  r %= alpha;
  const u64 half = alpha / 2;  // (alpha-1)/2 for odd alpha
  return r > half ? static_cast<i64>(r) - static_cast<i64>(alpha) : static_cast<i64>(r);
}

u64 inf_norm(const RingContext& ctx, const RingElement& a) {
  u64 norm = 0;
  for (u64 c : a.coeffs()) {
    const i64 centered = mod_pm(c, ctx.q());
    norm = std::max(norm, static_cast<u64>(centered < 0 ? -centered : centered));
  }
  return norm;
}

u64 inf_norm(const RingContext& ctx, const RingVector& v) {
  u64 norm = 0;
  for (const auto& e : v) {
    norm = std::max(norm, inf_norm(ctx, e));
  }
  return norm;
}

RingElement from_signed(const RingContext& ctx, std::span<const i64> coeffs) {
  check_dim(ctx, coeffs.size());
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out[i] = ctx.mod().from_signed(coeffs[i]);
  }
  return out;
}

RingElement sample_uniform_ring(XofStream& stream, const RingContext& ctx) {
  const unsigned width = ceil_log2(ctx.q());
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < ctx.n();) {
    const u64 v = stream.read_bits(width);
    if (v < ctx.q()) {
      out[i++] = v;
    }
  }
  return out;
}

RingElement sample_bounded(XofStream& stream, const RingContext& ctx, u64 eta) {
  if (eta == 0 || 2 * eta >= ctx.q()) {
    throw Error(ErrorCode::BadParams, "bound must satisfy 1 <= eta < q/2");
  }
  const u64 span = 2 * eta + 1;
  const unsigned width = ceil_log2(span);
  RingElement out(ctx.n());
  for (std::size_t i = 0; i < ctx.n();) {
    const u64 v = stream.read_bits(width);
    if (v < span) {
      out[i++] = ctx.mod().from_signed(static_cast<i64>(eta) - static_cast<i64>(v));
    }
  }
  return out;
}

}  // namespace nativedil
