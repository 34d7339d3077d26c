#pragma once

// Fast invariant suite behind `hypercert selfcheck`. Each check is
// self-contained and reports a one-line detail on failure.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hypercert/asymptotics.hpp"
#include "hypercert/certifier.hpp"
#include "hypercert/majorants.hpp"
#include "hypercert/rootbound.hpp"
#include "hypercert/weights.hpp"

namespace hypercert {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

// e_p(1/a) by direct subset enumeration; exponential, small dims only.
inline std::vector<Rat> elem_sym_brute(const WeightSequence& w) {
  const int n = w.dim;
  std::vector<Rat> e(static_cast<std::size_t>(n) + 1, Rat(0));
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    Rat prod(1);
    int bits = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1UL << i)) {
        prod /= w.a[static_cast<std::size_t>(i)];
        ++bits;
      }
    }
    e[static_cast<std::size_t>(bits)] += prod;
  }
  return e;
}

inline std::string check_cross_form(int max_dim) {
  for (int c : {3, 4, 5})
    for (Variant v : {Variant::rational_base, Variant::ceil_base})
      for (int dim = 2; dim <= max_dim; ++dim) {
        const WeightSequence w = build_weights(dim, Rat(c), v);
        // r = 2 zeroes a denominator of C^ in both forms; skip it.
        if (w.base == Rat(2)) continue;
        const Rat power = w.base == Rat(1) ? c_hat_power(w) : c_pair_power(w).c_hat;
        if (c_hat_general(w) != power)
          return "mismatch at dim " + std::to_string(dim) + ", c " + std::to_string(c) + ", " + to_string(v);
      }
  return {};
}

inline std::string check_guard(int max_dim) {
  for (int dim = 1; dim <= max_dim; ++dim) {
    const bool g = validity_guard(build_weights(dim, Rat(3)));
    if (g != (dim >= 8)) return "unexpected guard value at dim " + std::to_string(dim);
  }
  return {};
}

inline std::string check_elem_sym() {
  for (int dim = 1; dim <= 10; ++dim)
    for (Variant v : {Variant::rational_base, Variant::ceil_base}) {
      const WeightSequence w = build_weights(dim, Rat(3), v);
      const auto brute = elem_sym_brute(w);
      const auto all = elem_sym_inverse_all(w);
      for (int p = 0; p <= dim; ++p) {
        const auto i = static_cast<std::size_t>(p);
        if (elem_sym_inverse(w, p) != brute[i] || all[i] != brute[i])
          return "e_" + std::to_string(p) + " differs at dim " + std::to_string(dim);
      }
    }
  return {};
}

inline std::string check_rootbound() {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> deg(1, 6), num(-10, 10), den(1, 4);
  for (int t = 0; t < 60; ++t) {
    PolyCoeffs poly;
    const int n = deg(rng);
    poly.coeffs.push_back(Rat(1 + std::abs(num(rng)), den(rng)));
    for (int p = 1; p <= n; ++p) poly.coeffs.push_back(Rat(num(rng), den(rng)));
    const Rat bound = fujiwara_bound(poly);
    if (!dominates_roots(poly, bound)) return "bound does not dominate in trial " + std::to_string(t);
    const auto root = isolate_max_root(poly, Rat(1, 1024));
    if (root && root->hi > bound) return "root above bound in trial " + std::to_string(t);
  }
  return {};
}

inline std::string check_exp() {
  for (int k = -8; k <= 8; ++k) {
    const Rat x(k, 3);
    const RatInterval p = exp_enclosure(x, rat_pow(Rat(10), -20));
    const RatInterval m = exp_enclosure(-x, rat_pow(Rat(10), -20));
    if (!(p * m).contains(Rat(1))) return "exp(x) exp(-x) misses 1 at x = " + x.str();
  }
  return {};
}

inline std::string check_filter(int max_dim) {
  const CertificationMode mode = paper_mode(Rat(1));
  CertifyOptions exact;
  exact.exact = true;
  for (int dim = 8; dim <= std::min(max_dim, 40); dim += 4) {
    for (const Rat& deg : {rat_pow(Rat(dim, 2), dim), rat_pow(Rat(dim), dim)}) {
      const Certificate a = verify_gg(dim, Rat(3), Variant::rational_base, mode, deg);
      const Certificate b = verify_gg(dim, Rat(3), Variant::rational_base, mode, deg, exact);
      if (a.verdict != b.verdict || a.argmax_p != b.argmax_p)
        return "filtered and exact verdicts differ at dim " + std::to_string(dim);
    }
  }
  return {};
}

inline std::string check_verdict_monotone(int max_dim) {
  const CertificationMode mode = paper_mode();
  for (int dim = 8; dim <= max_dim; dim += 2) {
    const Rat deg = rat_pow(Rat(dim, 2), dim);
    const Certificate lo = verify_gg(dim, Rat(3), Variant::rational_base, mode, deg);
    const Certificate hi = verify_gg(dim, Rat(3), Variant::rational_base, mode, Rat(2) * deg);
    if (lo.verdict == Verdict::holds && hi.verdict != Verdict::holds)
      return "doubling the degree lost the certificate at dim " + std::to_string(dim);
  }
  return {};
}

}  // namespace detail

/// Runs every check; dims up to max_dim are exercised where a check scans.
inline std::vector<CheckResult> run_selfcheck(int max_dim = 40) {
  const std::vector<std::pair<std::string, std::function<std::string()>>> checks{
      {"cross-form majorant identity", [&] { return detail::check_cross_form(std::min(max_dim, 40)); }},
      {"guard threshold at const 3", [&] { return detail::check_guard(max_dim); }},
      {"elementary symmetric functions vs subsets", [] { return detail::check_elem_sym(); }},
      {"root bound soundness", [] { return detail::check_rootbound(); }},
      {"exponential enclosures", [] { return detail::check_exp(); }},
      {"filtered vs exact verdicts", [&] { return detail::check_filter(max_dim); }},
      {"verdict monotone in degree", [&] { return detail::check_verdict_monotone(max_dim); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    CheckResult r{name, false, {}};
    try {
      r.detail = fn();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hypercert
