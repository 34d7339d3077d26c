#pragma once

// Geometric weight sequences a_i = r^(dim-i) and the combinatorial
// quantities built from them: the weighted degree sum S, elementary
// symmetric sums of 1/a_i, the normalized ratios T_p = S^p e_p(1/a), and
// the multinomial coefficient extraction.

#include <string>
#include <string_view>
#include <vector>

#include "hypercert/enclosure.hpp"
#include "hypercert/exactnum.hpp"

namespace hypercert {

enum class Variant {
  rational_base,  // r = dim / c
  ceil_base,      // r = ceil(dim / c)
};

inline std::string to_string(Variant v) {
  return v == Variant::rational_base ? "rational-base" : "ceil-base";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "rational-base" || s == "rational") return Variant::rational_base;
  if (s == "ceil-base" || s == "ceil") return Variant::ceil_base;
  throw Error("unknown variant \"" + std::string(s) + "\"");
}

struct WeightSequence {
  int dim = 0;
  Rat c;
  Variant variant = Variant::rational_base;
  Rat base;
  std::vector<Rat> a;  // a[i-1] = base^(dim-i), i = 1..dim
};

inline WeightSequence build_weights(int dim, const Rat& c, Variant variant = Variant::rational_base) {
  if (dim < 1) throw Error("dimension must be at least 1");
  if (c < Rat(1)) throw Error("const must be at least 1");
  WeightSequence w;
  w.dim = dim;
  w.c = c;
  w.variant = variant;
  w.base = Rat(dim) / c;
  if (variant == Variant::ceil_base) w.base = ceil(w.base);
  w.a.resize(static_cast<std::size_t>(dim));
  Rat power(1);
  for (int i = dim; i >= 1; --i) {
    w.a[static_cast<std::size_t>(i - 1)] = power;
    power *= w.base;
  }
  return w;
}

/// S = 2 dim sum_i i a_i.
inline Rat weighted_degree_sum(const WeightSequence& w) {
  Rat s(0);
  for (int i = 1; i <= w.dim; ++i) s += Rat(i) * w.a[static_cast<std::size_t>(i - 1)];
  return Rat(2 * w.dim) * s;
}

/// e_p(1/a_1, ..., 1/a_dim) via the product prod(1 + x/a_i) truncated at x^p.
inline Rat elem_sym_inverse(const WeightSequence& w, int p) {
  if (p < 0 || p > w.dim) throw Error("symmetric degree out of range");
  std::vector<Rat> e(static_cast<std::size_t>(p) + 1, Rat(0));
  e[0] = Rat(1);
  for (const Rat& ai : w.a) {
    const Rat inv = Rat(1) / ai;
    for (int j = p; j >= 1; --j) e[j] += e[j - 1] * inv;
  }
  return e[static_cast<std::size_t>(p)];
}

/// All e_0..e_dim of 1/a via the Gaussian binomial identity
/// e_p(1, q, ..., q^(dim-1)) = q^(p(p-1)/2) prod_{j=1..p} (1 - q^(dim-j+1)) / (1 - q^j),
/// with q = 1/r. Falls back to ordinary binomials when r = 1.
inline std::vector<Rat> elem_sym_inverse_all(const WeightSequence& w) {
  const int n = w.dim;
  std::vector<Rat> e(static_cast<std::size_t>(n) + 1);
  e[0] = Rat(1);
  const Rat q = Rat(1) / w.base;
  for (int p = 1; p <= n; ++p) {
    Rat step;
    if (q == Rat(1)) {
      step = Rat(n - p + 1, p);
    } else {
      step = rat_pow(q, p - 1) * (Rat(1) - rat_pow(q, n - p + 1)) / (Rat(1) - rat_pow(q, p));
    }
    e[p] = e[p - 1] * step;
  }
  return e;
}

/// T_p = S^p e_p(1/a), the ratio of the p-th to the zeroth tilde intersection number.
inline Rat tilde_ratio(const WeightSequence& w, int p) {
  if (p < 1 || p > w.dim) throw Error("tilde index out of range");
  return rat_pow(weighted_degree_sum(w), p) * elem_sym_inverse(w, p);
}

/// T_1..T_dim (index p-1), exact.
inline std::vector<Rat> tilde_ratios(const WeightSequence& w) {
  const Rat s = weighted_degree_sum(w);
  const std::vector<Rat> e = elem_sym_inverse_all(w);
  std::vector<Rat> t;
  t.reserve(static_cast<std::size_t>(w.dim));
  Rat sp(1);
  for (int p = 1; p <= w.dim; ++p) {
    sp *= s;
    t.push_back(sp * e[p]);
  }
  return t;
}

/// Outward enclosures of T_1..T_dim. Each step multiplies by the exact
/// rational factor T_p / T_{p-1} = S q^(p-1) (1 - q^(dim-p+1)) / (1 - q^p).
inline std::vector<FloatInterval> tilde_ratio_enclosures(const WeightSequence& w, mpfr_prec_t prec) {
  const int n = w.dim;
  const Rat s = weighted_degree_sum(w);
  const Rat q = Rat(1) / w.base;
  std::vector<FloatInterval> t;
  t.reserve(static_cast<std::size_t>(n));
  FloatInterval acc = FloatInterval::from(Rat(1), prec);
  Rat qp(1);  // q^(p-1)
  for (int p = 1; p <= n; ++p) {
    Rat step;
    if (q == Rat(1)) {
      step = s * Rat(n - p + 1, p);
    } else {
      step = s * qp * (Rat(1) - rat_pow(q, n - p + 1)) / (Rat(1) - qp * q);
    }
    acc = acc * FloatInterval::from(step, prec);
    t.push_back(acc);
    qp *= q;
  }
  return t;
}

/// [t_1^(dim-k_1) ... t_dim^(dim-k_dim)] (a_1 t_1 + ... + a_dim t_dim)^(dim^2).
inline Rat multinomial_extract(const WeightSequence& w, std::span<const long> k) {
  if (k.size() != w.a.size()) throw Error("exponent vector length must equal the dimension");
  long sum = 0;
  for (long ki : k) sum += ki;
  if (sum != 0) throw Error("exponent vector must sum to zero");
  std::vector<unsigned long> parts;
  parts.reserve(k.size());
  for (long ki : k) {
    if (w.dim - ki < 0) return Rat(0);
    parts.push_back(static_cast<unsigned long>(w.dim - ki));
  }
  const auto total = static_cast<unsigned long>(w.dim) * static_cast<unsigned long>(w.dim);
  Rat value = multinomial(total, parts);
  for (std::size_t i = 0; i < parts.size(); ++i) value *= rat_pow(w.a[i], static_cast<long>(parts[i]));
  return value;
}

/// dim^2! / (dim!)^dim * prod a_i^dim. Only needed on demand; the certifier
/// works with the normalized ratios.
inline Rat i0_tilde(const WeightSequence& w) {
  const std::vector<long> zero(static_cast<std::size_t>(w.dim), 0);
  return multinomial_extract(w, zero);
}

}  // namespace hypercert
