#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nativedil/modarith.hpp"
#include "nativedil/xof.hpp"

namespace nativedil {

// A length-n coefficient sequence over Z_q, low degree first. Also used for
// the evaluation-domain image of a polynomial under the NTT.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(std::size_t n) : coeffs_(n, 0) {}
  explicit RingElement(std::vector<u64> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const noexcept { return coeffs_.size(); }
  u64& operator[](std::size_t i) { return coeffs_[i]; }
  u64 operator[](std::size_t i) const { return coeffs_[i]; }

  std::span<u64> coeffs() noexcept { return coeffs_; }
  std::span<const u64> coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::vector<u64> coeffs_;
};

class RingVector {
 public:
  RingVector() = default;
  RingVector(std::size_t k, std::size_t n) : elems_(k, RingElement(n)) {}
  explicit RingVector(std::vector<RingElement> elems) : elems_(std::move(elems)) {}

  std::size_t size() const noexcept { return elems_.size(); }
  RingElement& operator[](std::size_t i) { return elems_[i]; }
  const RingElement& operator[](std::size_t i) const { return elems_[i]; }

  auto begin() noexcept { return elems_.begin(); }
  auto end() noexcept { return elems_.end(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  friend bool operator==(const RingVector&, const RingVector&) = default;

 private:
  std::vector<RingElement> elems_;
};

// R_q = Z_q[X]/(X^n + 1) with q prime and q = 1 mod 2n. Immutable once built.
class RingContext {
 public:
  u64 q() const noexcept { return mod_.value(); }
  std::size_t n() const noexcept { return n_; }
  const Modulus& mod() const noexcept { return mod_; }
  // Smallest generator g of Z_q^*, and w = g^((q-1)/2n).
  u64 generator() const noexcept { return generator_; }
  u64 root() const noexcept { return root_; }
  u64 n_inv() const noexcept { return n_inv_; }

  // In-place transforms on a length-n span; evaluation points are
  // w^1, w^3, ..., w^(2n-1) in natural order.
  void forward_in_place(std::span<u64> a) const;
  void inverse_in_place(std::span<u64> a) const;

 private:
  friend RingContext make_ring(u64 q, u64 n);
  RingContext(u64 q, std::size_t n);

  Modulus mod_;
  std::size_t n_;
  u64 generator_ = 0;
  u64 root_ = 0;
  u64 n_inv_ = 0;
  u64 n_inv_shoup_ = 0;
  std::vector<std::size_t> bitrev_;
  std::vector<u64> zetas_, zetas_shoup_;
  std::vector<u64> inv_zetas_, inv_zetas_shoup_;
};

// Errors: NotPowerOfTwo, NotPrime, BadCongruence (q != 1 mod 2n).
RingContext make_ring(u64 q, u64 n);

RingElement ntt_forward(const RingContext& ctx, const RingElement& a);
RingElement ntt_inverse(const RingContext& ctx, const RingElement& a_hat);
RingElement pointwise_mul(const RingContext& ctx, const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingContext& ctx, const RingElement& a, const RingElement& b);
RingElement ring_add(const RingContext& ctx, const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingContext& ctx, const RingElement& a, const RingElement& b);

RingVector ntt_forward(const RingContext& ctx, const RingVector& v);
RingVector ntt_inverse(const RingContext& ctx, const RingVector& v);
RingVector ring_add(const RingContext& ctx, const RingVector& a, const RingVector& b);
RingVector ring_sub(const RingContext& ctx, const RingVector& a, const RingVector& b);

// Centered representative of r modulo alpha. Odd alpha: [-(alpha-1)/2, (alpha-1)/2];
// even alpha: (-alpha/2, alpha/2].
i64 mod_pm(u64 r, u64 alpha) noexcept;

u64 inf_norm(const RingContext& ctx, const RingElement& a);
u64 inf_norm(const RingContext& ctx, const RingVector& v);

RingElement from_signed(const RingContext& ctx, std::span<const i64> coeffs);

// Uniform element of R_q: ceil(log2 q)-bit chunks, out-of-range chunks rejected.
RingElement sample_uniform_ring(XofStream& stream, const RingContext& ctx);
// Uniform element of S_eta: ceil(log2(2 eta + 1))-bit chunks v <= 2 eta map to eta - v.
RingElement sample_bounded(XofStream& stream, const RingContext& ctx, u64 eta);

}  // namespace nativedil
