#include "nativedil/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nativedil/error.hpp"

namespace nativedil {

namespace {

// q^e, or kEnumerationCap + 1 once the cap is exceeded.
u64 capped_power(u64 q, u64 e) {
  u64 r = 1;
  for (u64 i = 0; i < e; ++i) {
    if (r > kEnumerationCap / q) {
      return kEnumerationCap + 1;
    }
    r *= q;
  }
  return r;
}

// Coefficients c with (b . delta)_index = sum_x c_x b_x, where b is flattened
// as (b_1[0..n), ..., b_l[0..n)).
std::vector<u64> linear_form(const RingContext& ctx, const RingVector& delta, std::size_t index) {
  const std::size_t n = ctx.n();
  const Modulus& mod = ctx.mod();
  std::vector<u64> c;
  c.reserve(delta.size() * n);
  for (const auto& d : delta) {
    for (std::size_t j = 0; j < n; ++j) {
      c.push_back(j <= index ? d[index - j] : mod.neg(d[n + index - j]));
    }
  }
  return c;
}

}  // namespace

TheoremHypotheses check_theorem_hypotheses(u64 q, u64 n, u64 m, u64 k, u64 gamma, u64 eta) {
  TheoremHypotheses h;
  h.q_at_least_16 = q >= 16;
  h.q_one_mod_2n = n > 0 && q % (2 * n) == 1;
  h.lhs = BigInt(2) * gamma * eta * n * (BigInt(m) + k);
  h.rhs = q / 32;
  h.norm_bound = h.lhs < h.rhs;
  return h;
}

RoundingSpec::RoundingSpec(u64 q, u64 t) : q_(q), t_(t) {
  if (t == 0 || t > q) {
    throw Error(ErrorCode::PreconditionViolated, "bucket count must be in 1..q");
  }
}

u64 round_t(u64 a, const RoundingSpec& spec) {
  const u64 j = (a % spec.q()) / spec.width();
  return std::min(j, spec.t() - 1);
}

Rational p_t_exact(const RoundingSpec& spec) {
  const u64 q = spec.q();
  const u64 t = spec.t();
  if (t * t > q) {
    throw Error(ErrorCode::PreconditionViolated, "requires t^2 <= q");
  }
  const Rational qr(q);
  const Rational w(spec.width());
  const Rational last(spec.bucket_size(t - 1));
  const Rational inner = Rational(t - 1) * w / qr * (qr - w) / qr + last / qr * (qr - last) / qr;
  return Rational(1) - inner;
}

Rational p_t_bruteforce(const RoundingSpec& spec) {
  const u64 q = spec.q();
  if (spec.t() * spec.t() > q) {
    throw Error(ErrorCode::PreconditionViolated, "requires t^2 <= q");
  }
  u64 same = 0;
  for (u64 u = 0; u < q; ++u) {
    const u64 ru = round_t(u, spec);
    for (u64 v = 0; v < q; ++v) {
      const u64 s = u + v >= q ? u + v - q : u + v;
      same += round_t(s, spec) == ru ? 1 : 0;
    }
  }
  return Rational(BigInt(same), BigInt(q) * q);
}

UniformityResult uniformity_check(const RingContext& ctx, std::size_t l, const RingVector& delta,
                                  std::size_t index) {
  const u64 q = ctx.q();
  const std::size_t n = ctx.n();
  if (delta.size() != l) {
    throw Error(ErrorCode::DimensionMismatch, "delta must have l components");
  }
  if (index >= n) {
    throw Error(ErrorCode::PreconditionViolated, "coefficient index out of range");
  }
  if (std::all_of(delta.begin(), delta.end(), [](const RingElement& e) { return e.is_zero(); })) {
    throw Error(ErrorCode::PreconditionViolated, "delta must be nonzero");
  }
  const u64 total = capped_power(q, n * l);
  if (total > kEnumerationCap) {
    throw Error(ErrorCode::TooLarge, "q^(nl) exceeds the enumeration cap");
  }

  const std::vector<u64> c = linear_form(ctx, delta, index);
  const std::size_t digits = c.size();
  std::vector<u64> tally(q, 0);
  std::vector<u64> b(digits, 0);
  u64 value = 0;
  const u64 c0 = c[0];
  // Odometer over b; any single digit step changes the form by +c_x mod q,
  // including the wrap from q-1 to 0.
  for (u64 outer = 0; outer < total / q; ++outer) {
    for (u64 i = 0; i < q; ++i) {
      ++tally[value];
      value += c0;
      if (value >= q) value -= q;
    }
    for (std::size_t x = 1; x < digits; ++x) {
      value += c[x];
      if (value >= q) value -= q;
      if (++b[x] < q) {
        break;
      }
      b[x] = 0;
    }
  }

  UniformityResult r;
  r.expected_count = total / q;
  const auto [lo, hi] = std::minmax_element(tally.begin(), tally.end());
  r.min_count = *lo;
  r.max_count = *hi;
  r.pass = r.min_count == r.expected_count && r.max_count == r.expected_count;
  return r;
}

UniformitySweep uniformity_sweep(const RingContext& ctx, std::size_t l, std::size_t index, u64 samples,
                                 std::uint64_t seed, bool force_sampled) {
  const u64 q = ctx.q();
  const std::size_t digits = ctx.n() * l;
  const u64 total = capped_power(q, digits);
  if (total > kEnumerationCap) {
    throw Error(ErrorCode::TooLarge, "q^(nl) exceeds the enumeration cap");
  }
  UniformitySweep sweep;
  sweep.operation_estimate = static_cast<double>(total - 1) * static_cast<double>(total);
  sweep.mode = force_sampled || sweep.operation_estimate > kFullSweepBudget ? SweepMode::Sampled : SweepMode::Full;

  auto to_delta = [&](const std::vector<u64>& flat) {
    RingVector delta(l, ctx.n());
    for (std::size_t x = 0; x < digits; ++x) {
      delta[x / ctx.n()][x % ctx.n()] = flat[x];
    }
    return delta;
  };
  auto check = [&](const std::vector<u64>& flat) {
    ++sweep.deltas_checked;
    if (uniformity_check(ctx, l, to_delta(flat), index).pass) {
      ++sweep.deltas_passed;
    }
  };

  std::vector<u64> flat(digits, 0);
  if (sweep.mode == SweepMode::Full) {
    for (u64 i = 1; i < total; ++i) {
      for (std::size_t x = 0; x < digits; ++x) {
        if (++flat[x] < q) break;
        flat[x] = 0;
      }
      check(flat);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> coeff(0, q - 1);
    for (u64 s = 0; s < samples; ++s) {
      do {
        for (auto& v : flat) v = coeff(rng);
      } while (std::all_of(flat.begin(), flat.end(), [](u64 v) { return v == 0; }));
      check(flat);
    }
  }
  return sweep;
}

u64 primitive_power_sum(const RingContext& ctx, i64 m) {
  const Modulus& mod = ctx.mod();
  const u64 w = m >= 0 ? ctx.root() : mod.inv(ctx.root());
  const u64 step = mod.pow(w, 2 * static_cast<u64>(m >= 0 ? m : -m));
  u64 sum = 0;
  u64 term = 1;
  for (std::size_t j = 0; j < ctx.n(); ++j) {
    sum = mod.add(sum, term);
    term = mod.mul(term, step);
  }
  return sum;
}

RingElement phi_matrix(const RingContext& ctx, const RingElement& a) {
  const Modulus& mod = ctx.mod();
  const std::size_t n = ctx.n();
  RingElement out(n);
  for (std::size_t row = 0; row < n; ++row) {
    const u64 point = mod.pow(ctx.root(), 2 * row + 1);
    u64 acc = 0;
    u64 power = 1;
    for (std::size_t col = 0; col < n; ++col) {
      acc = mod.add(acc, mod.mul(power, a[col]));
      power = mod.mul(power, point);
    }
    out[row] = acc;
  }
  return out;
}

RingElement phi_inverse_matrix(const RingContext& ctx, const RingElement& c) {
  const Modulus& mod = ctx.mod();
  const std::size_t n = ctx.n();
  const u64 root_inv = mod.inv(ctx.root());
  RingElement out(n);
  for (std::size_t row = 0; row < n; ++row) {
    u64 acc = 0;
    for (std::size_t col = 0; col < n; ++col) {
      const u64 entry = mod.pow(root_inv, (2 * col + 1) * row);
      acc = mod.add(acc, mod.mul(entry, c[col]));
    }
    out[row] = mod.mul(ctx.n_inv(), acc);
  }
  return out;
}

IsomorphismResult isomorphism_exhaustive(const RingContext& ctx, u64 random_pairs, std::uint64_t seed) {
  const u64 q = ctx.q();
  const std::size_t n = ctx.n();
  const u64 total = capped_power(q, n);
  if (total > kEnumerationCap) {
    throw Error(ErrorCode::TooLarge, "q^n exceeds the enumeration cap");
  }
  IsomorphismResult r;
  r.roundtrip = true;
  r.ntt_matches_matrix = true;
  RingElement a(n);
  for (u64 i = 0; i < total; ++i) {
    const RingElement image = phi_matrix(ctx, a);
    if (phi_inverse_matrix(ctx, image) != a || phi_matrix(ctx, phi_inverse_matrix(ctx, a)) != a) {
      r.roundtrip = false;
    }
    if (ntt_forward(ctx, a) != image) {
      r.ntt_matches_matrix = false;
    }
    ++r.elements_checked;
    for (std::size_t x = 0; x < n; ++x) {
      if (++a[x] < q) break;
      a[x] = 0;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> coeff(0, q - 1);
  r.homomorphism = true;
  for (u64 p = 0; p < random_pairs; ++p) {
    RingElement x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = coeff(rng);
      y[j] = coeff(rng);
    }
    // Negacyclic schoolbook product, independent of the NTT.
    RingElement xy(n);
    const Modulus& mod = ctx.mod();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const u64 t = mod.mul(x[i], y[j]);
        if (i + j < n) {
          xy[i + j] = mod.add(xy[i + j], t);
        } else {
          xy[i + j - n] = mod.sub(xy[i + j - n], t);
        }
      }
    }
    if (phi_matrix(ctx, xy) != pointwise_mul(ctx, phi_matrix(ctx, x), phi_matrix(ctx, y))) {
      r.homomorphism = false;
    }
    ++r.pairs_checked;
  }

  r.primitive_sums = true;
  for (i64 m = -static_cast<i64>(n) + 1; m < static_cast<i64>(n); ++m) {
    if (m != 0 && primitive_power_sum(ctx, m) != 0) {
      r.primitive_sums = false;
    }
  }
  return r;
}

}  // namespace nativedil
