#pragma once

// Fujiwara-type bound on the largest real root of
//   coeffs[0] d^n + coeffs[1] d^(n-1) + ... + coeffs[n],
// the exact root-domination test behind it, and an exact largest-root
// isolation oracle used to test both.

#include <optional>
#include <vector>

#include "hypercert/exactnum.hpp"

namespace hypercert {

struct PolyCoeffs {
  std::vector<Rat> coeffs;  // coeffs[p] multiplies d^(n-p); coeffs[0] is the leading one

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  void validate() const {
    if (coeffs.size() < 2) throw Error("polynomial needs at least two coefficients");
    if (coeffs[0].sign() <= 0) throw Error("leading coefficient must be positive");
  }
};

/// True iff (D/2)^p coeffs[0] >= |coeffs[p]| for every p >= 1. When true,
/// every real root is <= D.
inline bool dominates_roots(const PolyCoeffs& poly, const Rat& bound) {
  poly.validate();
  if (bound.sign() < 0) throw Error("bound must be nonnegative");
  const Rat half = bound / Rat(2);
  Rat lhs = poly.coeffs[0];
  for (std::size_t p = 1; p < poly.coeffs.size(); ++p) {
    lhs *= half;
    if (lhs < abs(poly.coeffs[p])) return false;
  }
  return true;
}

/// Upper enclosure of y^(1/p), y >= 0, with relative width <= rel.
/// The returned value u satisfies u^p >= y.
inline Rat root_upper(const Rat& y, unsigned long p, const Rat& rel) {
  if (y.sign() == 0) return Rat(0);
  // y < 2^(bits(num) - bits(den) + 1), so 2^ceil(that / p) is above the root.
  const long k = static_cast<long>(mpz_sizeinbase(y.num().get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(y.den().get_mpz_t(), 2)) + 1;
  const long pl = static_cast<long>(p);
  Rat hi = dyadic(1, k >= 0 ? (k + pl - 1) / pl : -((-k) / pl));
  Rat lo(0);
  while (cmp_scaled_power(hi / Rat(2), p, y) >= 0) hi /= Rat(2);
  lo = hi / Rat(2);
  while (hi - lo > rel * hi) {
    const Rat mid = (lo + hi) / Rat(2);
    if (cmp_scaled_power(mid, p, y) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// R = 2 max_p u_p where u_p is an upper enclosure of (|coeffs[p]|/coeffs[0])^(1/p)
/// to relative precision `rel`. Every real root is <= R, and
/// dominates_roots(poly, R) holds.
inline Rat fujiwara_bound(const PolyCoeffs& poly, const Rat& rel = dyadic(1, -32)) {
  poly.validate();
  Rat best(0);
  for (std::size_t p = 1; p < poly.coeffs.size(); ++p) {
    const Rat y = abs(poly.coeffs[p]) / poly.coeffs[0];
    const Rat u = root_upper(y, p, rel);
    if (best < u) best = u;
  }
  return Rat(2) * best;
}

namespace detail {

// Dense polynomial, ascending powers, exact coefficients.
using Poly = std::vector<Rat>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back().sign() == 0) f.pop_back();
}

inline Poly from_coeffs(const PolyCoeffs& poly) {
  Poly f(poly.coeffs.rbegin(), poly.coeffs.rend());
  trim(f);
  return f;
}

inline Rat eval(const Poly& f, const Rat& x) {
  Rat acc(0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Poly derivative(const Poly& f) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Rat(static_cast<long>(i)));
  trim(d);
  return d;
}

// f = q g + r; returns {q, r}.
inline std::pair<Poly, Poly> divmod(Poly f, const Poly& g) {
  if (g.empty()) throw Error("polynomial division by zero");
  Poly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Rat(0));
  while (!f.empty() && f.size() >= g.size()) {
    const std::size_t shift = f.size() - g.size();
    const Rat c = f.back() / g.back();
    q[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i) f[i + shift] -= c * g[i];
    f.pop_back();
    trim(f);
  }
  trim(q);
  return {q, f};
}

inline Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Sturm sequence of a square-free polynomial.
inline std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f, derivative(f)};
  while (!chain.back().empty()) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  int count = 0, last = 0;
  for (const auto& g : chain) {
    const int s = eval(g, x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// Interval of width <= `width` containing the largest real root, or nullopt
/// when there is no real root. Works on the square-free part, so roots of
/// even multiplicity are found too; roots are counted with a Sturm chain and
/// located by bisection inside the Cauchy bound 1 + max|coeffs[p]|/coeffs[0].
inline std::optional<RatInterval> isolate_max_root(const PolyCoeffs& poly, const Rat& width) {
  poly.validate();
  if (width.sign() <= 0) throw Error("width must be positive");
  const detail::Poly f = detail::from_coeffs(poly);
  if (f.size() < 2) return std::nullopt;
  const detail::Poly g = detail::gcd(f, detail::derivative(f));
  const detail::Poly sf = g.size() <= 1 ? f : detail::divmod(f, g).first;
  const auto chain = detail::sturm_chain(sf);

  Rat cauchy(0);
  for (std::size_t p = 1; p < poly.coeffs.size(); ++p) {
    const Rat v = abs(poly.coeffs[p]) / poly.coeffs[0];
    if (cauchy < v) cauchy = v;
  }
  cauchy += Rat(1);
  // Roots lie strictly inside (-cauchy, cauchy); count those in (t, cauchy].
  const int at_top = detail::sign_variations(chain, cauchy);
  auto roots_above = [&](const Rat& t) { return detail::sign_variations(chain, t) - at_top; };
  Rat lo = -cauchy, hi = cauchy;
  if (roots_above(lo) == 0) return std::nullopt;
  // Invariant: the largest root lies in (lo, hi].
  while (hi - lo > width) {
    const Rat mid = (lo + hi) / Rat(2);
    if (roots_above(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return RatInterval{lo, hi};
}

}  // namespace hypercert
