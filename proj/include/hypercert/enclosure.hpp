#pragma once

// Outward-rounded interval arithmetic on MPFR floats. Used as a fast
// filter in front of exact rational evaluation: every operation returns an
// interval guaranteed to contain the exact real result.

#include <mpfr.h>

#include <algorithm>
#include <utility>

#include "hypercert/exactnum.hpp"

namespace hypercert {

namespace detail {

/// RAII owner of one mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Mpfr& operator=(Mpfr o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

inline void widen_exponent_range() {
  // The exponent range is thread-local in thread-safe MPFR builds.
  thread_local const bool once = [] {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    return true;
  }();
  (void)once;
}

/// Exact value of a finite MPFR number.
inline Rat to_rat(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) throw Error("enclosure overflow");
  if (mpfr_zero_p(x)) return Rat(0);
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  return dyadic(m, static_cast<long>(e));
}

}  // namespace detail

/// Closed interval [lo, hi] of MPFR floats with outward rounding.
class FloatInterval {
 public:
  explicit FloatInterval(mpfr_prec_t prec = 256) : lo_(prec), hi_(prec) {
    detail::widen_exponent_range();
  }

  static FloatInterval from(const Rat& x, mpfr_prec_t prec) {
    FloatInterval r(prec);
    mpfr_set_q(r.lo_.get(), x.gmp().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), x.gmp().get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static FloatInterval from(const RatInterval& x, mpfr_prec_t prec) {
    FloatInterval r(prec);
    mpfr_set_q(r.lo_.get(), x.lo.gmp().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), x.hi.gmp().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return lo_.prec(); }
  Rat lo() const { return detail::to_rat(lo_.get()); }
  Rat hi() const { return detail::to_rat(hi_.get()); }
  RatInterval rat() const { return {lo(), hi()}; }

  /// Lower endpoint rounded down to `bits` significant bits (sign preserved).
  Rat lo_rounded(mpfr_prec_t bits) const {
    detail::Mpfr t(bits);
    mpfr_set(t.get(), lo_.get(), MPFR_RNDD);
    return detail::to_rat(t.get());
  }
  Rat hi_rounded(mpfr_prec_t bits) const {
    detail::Mpfr t(bits);
    mpfr_set(t.get(), hi_.get(), MPFR_RNDU);
    return detail::to_rat(t.get());
  }

  bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool certainly_nonpositive() const { return mpfr_sgn(hi_.get()) <= 0; }
  bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
  /// Every element of *this is >= every element of o.
  bool certainly_ge(const FloatInterval& o) const { return mpfr_cmp(lo_.get(), o.hi_.get()) >= 0; }
  bool lo_below(const FloatInterval& o) const { return mpfr_cmp(lo_.get(), o.lo_.get()) < 0; }
  /// Every element of *this is < every element of o.
  bool certainly_lt(const FloatInterval& o) const { return mpfr_cmp(hi_.get(), o.lo_.get()) < 0; }

  friend FloatInterval operator+(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
  }
  friend FloatInterval operator-(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    r.check();
    return r;
  }
  friend FloatInterval operator*(const FloatInterval& a, const FloatInterval& b) {
    const mpfr_prec_t prec = std::max(a.prec(), b.prec());
    FloatInterval r(prec);
    detail::Mpfr t(prec);
    bool first = true;
    for (mpfr_srcptr x : {a.lo_.get(), a.hi_.get()}) {
      for (mpfr_srcptr y : {b.lo_.get(), b.hi_.get()}) {
        mpfr_mul(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    r.check();
    return r;
  }
  friend FloatInterval operator/(const FloatInterval& a, const FloatInterval& b) {
    if (b.contains_zero()) throw Error("enclosure division by an interval containing zero");
    const mpfr_prec_t prec = std::max(a.prec(), b.prec());
    FloatInterval r(prec);
    detail::Mpfr t(prec);
    bool first = true;
    for (mpfr_srcptr x : {a.lo_.get(), a.hi_.get()}) {
      for (mpfr_srcptr y : {b.lo_.get(), b.hi_.get()}) {
        mpfr_div(t.get(), x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        first = false;
      }
    }
    r.check();
    return r;
  }

  /// x^k for an interval with lo > 0.
  FloatInterval pow(unsigned long k) const {
    if (!certainly_positive() && k > 0) throw Error("enclosure power needs a positive interval");
    FloatInterval r(prec());
    mpfr_pow_ui(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    r.check();
    return r;
  }

  /// k-th root for an interval with lo >= 0.
  FloatInterval root(unsigned long k) const {
    if (mpfr_sgn(lo_.get()) < 0) throw Error("enclosure root of a negative interval");
    FloatInterval r(prec());
    mpfr_rootn_ui(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    r.check();
    return r;
  }

  friend FloatInterval min(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  friend FloatInterval max(const FloatInterval& a, const FloatInterval& b) {
    FloatInterval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }

 private:
  void check() const {
    if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get())) throw Error("enclosure overflow");
  }

  detail::Mpfr lo_;
  detail::Mpfr hi_;
};

}  // namespace hypercert
