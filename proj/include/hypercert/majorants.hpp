#pragma once

// Majorant products C^(1/a) ("c_hat") and C(1/a) ("c_plain") for geometric
// weights, in the general pairwise form and in the gap-indexed power form.

#include <vector>

#include "hypercert/enclosure.hpp"
#include "hypercert/exactnum.hpp"
#include "hypercert/weights.hpp"

namespace hypercert {

struct MajorantPair {
  Rat c_hat;
  Rat c_plain;
  Rat c_minus_ub;  // (c_hat - c_plain) / 2
  bool valid = false;
};

/// Same quantities as outward enclosures, for dimensions where the exact
/// rationals are too large to be practical.
struct MajorantBounds {
  FloatInterval c_hat;
  FloatInterval c_plain;
  FloatInterval c_minus_ub;
  bool valid = false;
};

namespace detail {

// Balanced product, keeps operand sizes even.
inline mpz_class product(std::vector<mpz_class>& xs, std::size_t lo, std::size_t hi) {
  if (hi == lo) return 1;
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product(xs, lo, mid) * product(xs, mid, hi);
}

// Accumulates a rational as separate numerator/denominator factor lists and
// canonicalizes once at the end.
class FactorAccumulator {
 public:
  void mul(const Rat& x, unsigned long k) {
    if (k == 0) return;
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), k);
    num_.push_back(std::move(n));
    den_.push_back(std::move(d));
  }
  void div(const Rat& x, unsigned long k) {
    if (k == 0) return;
    if (x.sign() == 0) throw Error("division by zero");
    mul(Rat(x.den(), x.num()), k);
  }
  Rat value() {
    return Rat(product(num_, 0, num_.size()), product(den_, 0, den_.size()));
  }

 private:
  std::vector<mpz_class> num_;
  std::vector<mpz_class> den_;
};

struct GapFactors {
  Rat minus_one;    // r^k - 1
  Rat minus_two;    // r^k - 2
  Rat hat_tail;     // r^k - 2 - 1/r
  Rat plain_tail;   // r^k - 2 + 1/r
};

inline GapFactors gap_factors(const Rat& rk, const Rat& inv_r) {
  return {rk - Rat(1), rk - Rat(2), rk - Rat(2) - inv_r, rk - Rat(2) + inv_r};
}

}  // namespace detail

/// prod_{1<=i<j<=n} (a_i/a_j - 1)/(a_i/a_j - 2)
///   * prod_{2<=i<j<=n} (a_i/a_j - 2)/(a_i/a_j - 2 - a_i/a_{i-1}),
/// evaluated pair by pair from the weights themselves.
inline Rat c_hat_general(const WeightSequence& w) {
  const int n = w.dim;
  detail::FactorAccumulator acc;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Rat ratio = w.a[i - 1] / w.a[j - 1];
      const Rat den = ratio - Rat(2);
      if (den.sign() == 0) throw Error("degenerate weight ratio");
      acc.mul(ratio - Rat(1), 1);
      acc.div(den, 1);
      if (i >= 2) {
        const Rat tail = ratio - Rat(2) - w.a[i - 1] / w.a[i - 2];
        if (tail.sign() == 0) throw Error("degenerate weight ratio");
        acc.mul(den, 1);
        acc.div(tail, 1);
      }
    }
  }
  return acc.value();
}

/// True iff dim >= 2 and r^k - 1, r^k - 2 and r^k - 2 - 1/r are all positive
/// for k = 1..dim-1.
inline bool validity_guard(const WeightSequence& w) {
  if (w.dim < 2) return false;
  const Rat inv_r = Rat(1) / w.base;
  Rat rk(1);
  for (int k = 1; k < w.dim; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    if (f.minus_one.sign() <= 0 || f.minus_two.sign() <= 0 || f.hat_tail.sign() <= 0) return false;
    // All three are increasing in r^k, and r^k is increasing once r > 1.
    if (w.base > Rat(1)) break;
  }
  return true;
}

/// C^ alone in the gap-indexed form. Unlike c_pair_power it is defined at
/// r = 1, where only C has a vanishing factor.
inline Rat c_hat_power(const WeightSequence& w) {
  const int n = w.dim;
  const Rat inv_r = Rat(1) / w.base;
  detail::FactorAccumulator hat;
  Rat rk(1);
  for (int k = 1; k < n; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    if (f.minus_two.sign() == 0 || (n - 1 - k > 0 && f.hat_tail.sign() == 0)) throw Error("degenerate base r");
    hat.mul(f.minus_one, static_cast<unsigned long>(n - k));
    hat.div(f.minus_two, 1);
    hat.div(f.hat_tail, static_cast<unsigned long>(n - 1 - k));
  }
  return hat.value();
}

/// Both majorants in the gap-indexed form
///   prod_{k=1}^{n-1} (r^k-1)^(n-k) / ((r^k-2) (r^k-2 -+ 1/r)^(n-1-k)).
inline MajorantPair c_pair_power(const WeightSequence& w) {
  const int n = w.dim;
  const Rat inv_r = Rat(1) / w.base;
  detail::FactorAccumulator hat, plain;
  Rat rk(1);
  for (int k = 1; k < n; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    if (f.minus_two.sign() == 0 || (n - 1 - k > 0 && (f.hat_tail.sign() == 0 || f.plain_tail.sign() == 0)))
      throw Error("degenerate base r");
    const auto e1 = static_cast<unsigned long>(n - k);
    const auto e2 = static_cast<unsigned long>(n - 1 - k);
    for (auto* acc : {&hat, &plain}) {
      acc->mul(f.minus_one, e1);
      acc->div(f.minus_two, 1);
    }
    hat.div(f.hat_tail, e2);
    plain.div(f.plain_tail, e2);
  }
  MajorantPair m;
  m.c_hat = hat.value();
  m.c_plain = plain.value();
  m.c_minus_ub = (m.c_hat - m.c_plain) / Rat(2);
  m.valid = validity_guard(w);
  return m;
}

/// Outward enclosures of the gap-indexed form. Each factor base is exact;
/// only the powers and products are rounded.
inline MajorantBounds majorant_enclosure(const WeightSequence& w, mpfr_prec_t prec) {
  const int n = w.dim;
  const Rat inv_r = Rat(1) / w.base;
  MajorantBounds b{FloatInterval::from(Rat(1), prec), FloatInterval::from(Rat(1), prec),
                   FloatInterval::from(Rat(0), prec), validity_guard(w)};
  if (!b.valid) throw Error("weights outside certified domain");
  Rat rk(1);
  for (int k = 1; k < n; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    const FloatInterval common = FloatInterval::from(f.minus_one, prec).pow(static_cast<unsigned long>(n - k)) /
                                 FloatInterval::from(f.minus_two, prec);
    const auto e2 = static_cast<unsigned long>(n - 1 - k);
    b.c_hat = b.c_hat * (common / FloatInterval::from(f.hat_tail, prec).pow(e2));
    b.c_plain = b.c_plain * (common / FloatInterval::from(f.plain_tail, prec).pow(e2));
  }
  // c_hat - c_plain = c_hat (1 - c_plain/c_hat) is computed from the ratio
  // to avoid cancellation between two wide intervals.
  FloatInterval ratio = FloatInterval::from(Rat(1), prec);
  rk = Rat(1);
  for (int k = 1; k < n; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    ratio = ratio * (FloatInterval::from(f.hat_tail / f.plain_tail, prec)).pow(static_cast<unsigned long>(n - 1 - k));
  }
  b.c_minus_ub = b.c_hat * (FloatInterval::from(Rat(1), prec) - ratio) / FloatInterval::from(Rat(2), prec);
  return b;
}

/// C^/C as an enclosure: prod_k ((r^k-2+1/r)/(r^k-2-1/r))^(n-1-k).
inline FloatInterval majorant_ratio_enclosure(const WeightSequence& w, mpfr_prec_t prec) {
  if (!validity_guard(w)) throw Error("weights outside certified domain");
  const Rat inv_r = Rat(1) / w.base;
  FloatInterval ratio = FloatInterval::from(Rat(1), prec);
  Rat rk(1);
  for (int k = 1; k < w.dim; ++k) {
    rk *= w.base;
    const auto f = detail::gap_factors(rk, inv_r);
    ratio = ratio * FloatInterval::from(f.plain_tail / f.hat_tail, prec).pow(static_cast<unsigned long>(w.dim - 1 - k));
  }
  return ratio;
}

}  // namespace hypercert
