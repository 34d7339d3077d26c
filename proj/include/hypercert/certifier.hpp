#pragma once

// Per-dimension conditional certificates. The inequality chain is
//   I_0 / I0~   >= rho0   = iota/margin - (C^ - C)/2
//   |I_p| / I0~ <= rho[p] = T_p * beta*margin * C^ * ((dim+1)^2 + 2)/2
// and a target degree D is certified when (D/2)^p rho0 >= rho[p] for every p,
// i.e. when D dominates the roots of rho0 d^n - rho[1] d^(n-1) - ... - rho[n].
//
// Verdicts are computed with an outward-rounded filter first and fall back
// to exact rational arithmetic whenever the filter cannot decide.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypercert/enclosure.hpp"
#include "hypercert/exactnum.hpp"
#include "hypercert/majorants.hpp"
#include "hypercert/parallel.hpp"
#include "hypercert/rootbound.hpp"
#include "hypercert/weights.hpp"

namespace hypercert {

/// Width used for every exponential constant entering an assumption.
inline Rat assumption_exp_width() { return rat_pow(Rat(10), -12); }

struct CertificationMode {
  Rat iota;    // assumed lower bound for I0+ / I0~
  Rat beta;    // assumed upper bound for |B|(2n mu h / a)
  Rat margin;  // >= 1; divides iota, multiplies beta
  std::string label;
  std::vector<std::string> notes;  // mode-specific assumption strings

  void validate() const {
    if (iota.sign() <= 0) throw Error("iota must be positive");
    if (beta.sign() <= 0) throw Error("beta must be positive");
    if (margin < Rat(1)) throw Error("margin must be at least 1");
  }
};

/// Upper enclosure of e^(1/2) at the assumption width.
inline Rat default_beta() { return exp_enclosure(Rat(1, 2), assumption_exp_width()).hi; }

inline CertificationMode paper_mode(const Rat& margin = Rat(11, 10)) {
  return {Rat(17, 2), default_beta(), margin, "paper-asymptotic",
          {"I0+ >= I0~ (1 + 3 + 3^2/2) taken with its O(1/n) correction dropped",
           "|B| <= e^(1/2) taken with its O(1/n) correction dropped (upper enclosure, width 1e-12)"}};
}

inline CertificationMode conservative_mode(const Rat& margin = Rat(3, 2)) {
  return {Rat(1), default_beta(), margin, "conservative",
          {"the constant Laurent coefficient contributes I0~ positively (iota = 1)",
           "|B| <= e^(1/2) taken with its O(1/n) correction dropped (upper enclosure, width 1e-12)"}};
}

inline CertificationMode mode_by_name(const std::string& name, const std::optional<Rat>& margin = std::nullopt) {
  if (name == "paper" || name == "paper-asymptotic") return margin ? paper_mode(*margin) : paper_mode();
  if (name == "conservative") return margin ? conservative_mode(*margin) : conservative_mode();
  throw Error("unknown mode \"" + name + "\"");
}

struct BoundProfile {
  Rat rho0;
  std::vector<Rat> rho;  // rho[p-1], p = 1..dim

  const Rat& at(int p) const { return rho.at(static_cast<std::size_t>(p - 1)); }
};

inline Rat degree_factor(int dim) { return Rat((dim + 1) * (dim + 1) + 2, 2); }

inline BoundProfile assemble_bounds(const WeightSequence& w, const MajorantPair& m, const CertificationMode& mode) {
  if (!m.valid) throw Error("weights outside certified domain");
  mode.validate();
  BoundProfile b;
  b.rho0 = mode.iota / mode.margin - m.c_minus_ub;
  const Rat k = mode.beta * mode.margin * m.c_hat * degree_factor(w.dim);
  for (const Rat& t : tilde_ratios(w)) b.rho.push_back(t * k);
  return b;
}

enum class Verdict { holds, fails, invalid_domain };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::invalid_domain: return "invalid-domain";
  }
  return "?";
}

struct Certificate {
  int dim = 0;
  std::optional<int> n;  // set for Kobayashi targets
  Rat c;
  Variant variant = Variant::rational_base;
  std::string mode;
  Rat margin;
  Rat degree;
  Verdict verdict = Verdict::invalid_domain;
  // Lower bound (64-bit dyadic, rounded down) on min_p 1 - rho[p] / ((D/2)^p rho0).
  std::optional<Rat> slack;
  std::optional<int> argmax_p;
  std::vector<std::string> assumptions;
  std::optional<double> elapsed_ms;
};

struct CertifyOptions {
  bool exact = false;           // skip the filter
  mpfr_prec_t precision = 256;  // first filter precision, multiplied by 4 on each retry
  int filter_attempts = 3;
  bool timing = false;
};

namespace detail {

struct Evaluation {
  bool decided = false;
  Verdict verdict = Verdict::invalid_domain;
  std::optional<Rat> slack;
  std::optional<int> argmax;
};

inline constexpr mpfr_prec_t kSlackBits = 64;

inline Evaluation evaluate_filtered(const WeightSequence& w, const CertificationMode& mode, const Rat& degree,
                                    mpfr_prec_t prec) {
  Evaluation ev;
  const MajorantBounds mb = majorant_enclosure(w, prec);
  const FloatInterval rho0 = FloatInterval::from(mode.iota / mode.margin, prec) - mb.c_minus_ub;
  if (rho0.certainly_nonpositive()) {
    ev.decided = true;
    return ev;
  }
  if (!rho0.certainly_positive()) return ev;

  const FloatInterval k = FloatInterval::from(mode.beta * mode.margin * degree_factor(w.dim), prec) * mb.c_hat;
  const std::vector<FloatInterval> t = tilde_ratio_enclosures(w, prec);
  const FloatInterval half = FloatInterval::from(degree / Rat(2), prec);
  const FloatInterval one = FloatInterval::from(Rat(1), prec);

  FloatInterval lhs = rho0;
  std::optional<FloatInterval> slack;
  std::vector<FloatInterval> growth;
  bool all_hold = true, any_fail = false;
  for (int p = 1; p <= w.dim; ++p) {
    lhs = lhs * half;
    const FloatInterval rho_p = t[static_cast<std::size_t>(p - 1)] * k;
    if (!lhs.certainly_ge(rho_p)) {
      all_hold = false;
      if (lhs.certainly_lt(rho_p)) any_fail = true;
    }
    const FloatInterval s = one - rho_p / lhs;
    slack = slack ? min(*slack, s) : s;
    growth.push_back((rho_p / rho0).root(static_cast<unsigned long>(p)));
  }
  if (!all_hold && !any_fail) return ev;

  std::size_t best = 0;
  for (std::size_t i = 1; i < growth.size(); ++i)
    if (growth[best].lo_below(growth[i])) best = i;
  for (std::size_t i = 0; i < growth.size(); ++i)
    if (i != best && !growth[i].certainly_lt(growth[best])) return ev;

  ev.decided = true;
  ev.verdict = all_hold ? Verdict::holds : Verdict::fails;
  ev.slack = slack->lo_rounded(kSlackBits);
  ev.argmax = static_cast<int>(best) + 1;
  return ev;
}

/// argmax_p (rho[p]/rho0)^(1/p), smallest p on ties. Enclosures of the
/// p-th roots settle it when the maximum is separated; otherwise exact
/// comparisons decide.
inline int exact_argmax(const BoundProfile& b) {
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 4) {
    const FloatInterval rho0 = FloatInterval::from(b.rho0, prec);
    std::vector<FloatInterval> g;
    for (std::size_t i = 0; i < b.rho.size(); ++i)
      g.push_back((FloatInterval::from(b.rho[i], prec) / rho0).root(static_cast<unsigned long>(i + 1)));
    std::size_t top = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
      if (g[top].lo_below(g[i])) top = i;
    bool separated = true;
    for (std::size_t i = 0; i < g.size() && separated; ++i) separated = i == top || g[i].certainly_lt(g[top]);
    if (separated) return static_cast<int>(top) + 1;
  }
  int best = 1;
  for (int p = 2; p <= static_cast<int>(b.rho.size()); ++p) {
    const Rat x = b.at(p) / b.rho0;
    const Rat y = rat_pow(b.at(best) / b.rho0, p);
    // x^(1/p) > z^(1/best) with z = rho[best]/rho0  <=>  x^best > z^p
    if (cmp_scaled_power(x, static_cast<unsigned long>(best), y) > 0) best = p;
  }
  return best;
}

inline Evaluation evaluate_exact(const WeightSequence& w, const CertificationMode& mode, const Rat& degree) {
  Evaluation ev;
  ev.decided = true;
  const BoundProfile b = assemble_bounds(w, c_pair_power(w), mode);
  if (b.rho0.sign() <= 0) return ev;
  PolyCoeffs poly{{b.rho0}};
  for (const Rat& r : b.rho) poly.coeffs.push_back(-r);
  ev.verdict = dominates_roots(poly, degree) ? Verdict::holds : Verdict::fails;
  const Rat half = degree / Rat(2);
  Rat lhs = b.rho0;
  std::optional<Rat> slack;
  for (const Rat& r : b.rho) {
    lhs *= half;
    const Rat s = Rat(1) - r / lhs;
    if (!slack || s < *slack) slack = s;
  }
  ev.slack = FloatInterval::from(*slack, kSlackBits).lo();
  ev.argmax = exact_argmax(b);
  return ev;
}

inline std::vector<std::string> base_assumptions(const CertificationMode& mode) {
  std::vector<std::string> out{
      "I0+ >= iota * I0~ with iota = " + mode.iota.str() + " (divided by margin " + mode.margin.str() + ")",
      "|B|(2n mu h/a_1, ..., 2n mu h/a_n) <= beta = " + mode.beta.str() + " (multiplied by margin " +
          mode.margin.str() + ")",
      "|C|(1/a) <= C^(1/a), hence C-(1/a) <= (C^(1/a) - C(1/a))/2",
      "signs of I_p unknown: the worst case -|I_p| is used for every p >= 1",
      "largest root <= 2 max_p (|I_p|/I_0)^(1/p)"};
  out.insert(out.end(), mode.notes.begin(), mode.notes.end());
  return out;
}

}  // namespace detail

inline Certificate verify_gg(int dim, const Rat& c, Variant variant, const CertificationMode& mode, const Rat& degree,
                             const CertifyOptions& opts = {}) {
  if (degree.sign() <= 0) throw Error("target degree must be positive");
  mode.validate();
  const auto start = std::chrono::steady_clock::now();
  const WeightSequence w = build_weights(dim, c, variant);

  Certificate cert;
  cert.dim = dim;
  cert.c = c;
  cert.variant = variant;
  cert.mode = mode.label;
  cert.margin = mode.margin;
  cert.degree = degree;
  cert.assumptions = detail::base_assumptions(mode);

  if (validity_guard(w)) {
    detail::Evaluation ev;
    if (!opts.exact) {
      mpfr_prec_t prec = opts.precision;
      for (int attempt = 0; attempt < opts.filter_attempts && !ev.decided; ++attempt, prec *= 4)
        ev = detail::evaluate_filtered(w, mode, degree, prec);
    }
    if (!ev.decided) ev = detail::evaluate_exact(w, mode, degree);
    cert.verdict = ev.verdict;
    cert.slack = ev.slack;
    cert.argmax_p = ev.argmax;
  }
  if (opts.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    cert.elapsed_ms = std::round(ms.count() * 1000.0) / 1000.0;
  }
  return cert;
}

/// Leading-order constant of the root bound, scaled by (c/dim)^dim / dim^2:
/// 2c * beta * e^c * margin^2 / iota (12 e^(7/2)/17 for c = 3 in paper mode
/// with margin 1, up to the enclosure of beta).
inline RatInterval lambda_constant(const Rat& c, const CertificationMode& mode) {
  const RatInterval ec = exp_enclosure(c, rat_pow(Rat(10), -15));
  const Rat scale = Rat(2) * c * mode.beta * mode.margin * mode.margin / mode.iota;
  return {ec.lo * scale, ec.hi * scale};
}

/// Green-Griffiths certificate in dimension 2n at degree
/// n^(2n) / (discrepancy * divisor^n), transferred to dimension n.
inline Certificate verify_kobayashi(int n, const Rat& c, Variant variant, const CertificationMode& mode,
                                    const Rat& discrepancy = Rat(1), const CertifyOptions& opts = {},
                                    const Rat& divisor = Rat(1)) {
  if (n < 1) throw Error("n must be at least 1");
  if (discrepancy < Rat(1)) throw Error("discrepancy must be at least 1");
  if (divisor < Rat(1)) throw Error("degree divisor must be at least 1");
  const Rat degree = rat_pow(Rat(n), 2L * n) / (discrepancy * rat_pow(divisor, n));
  Certificate cert = verify_gg(2 * n, c, variant, mode, degree, opts);
  cert.n = n;
  cert.assumptions.push_back("transfer: degeneracy for generic hypersurfaces in dimension 2n = " +
                             std::to_string(2 * n) + " gives hyperbolicity in dimension n = " + std::to_string(n) +
                             " at degree n^(2n)/(" + compact(discrepancy) + " * " + compact(divisor) + "^n)");
  // Leading-order comparison: (2/c)^(2n) (2n)^2 Lambda * discrepancy * divisor^n <= 1.
  const RatInterval lam = lambda_constant(c, mode);
  const Rat lead = rat_pow(Rat(2) / c, 2L * n) * Rat(4L * n * n) * discrepancy * rat_pow(divisor, n);
  const Rat ratio_hi = lead * lam.hi;
  cert.assumptions.push_back("asymptotic side-check (leading order, O(1/n) dropped): (2/c)^(2n) (2n)^2 Lambda / (D/n^(2n)) <= " +
                             to_scientific(ratio_hi, 6, Rounding::up) + (ratio_hi <= Rat(1) ? " <= 1" : " > 1"));
  return cert;
}

struct ThresholdResult {
  std::optional<int> threshold;  // smallest N with holds for every n in [N, n_max]
  std::vector<Certificate> table;  // n = 1..n_max
};

inline ThresholdResult find_threshold(const Rat& c, Variant variant, const CertificationMode& mode,
                                      const Rat& discrepancy, int n_max, int jobs = 1,
                                      const CertifyOptions& opts = {}, const Rat& divisor = Rat(1)) {
  if (n_max < 1) throw Error("n_max must be at least 1");
  std::vector<int> ns;
  for (int n = 1; n <= n_max; ++n) ns.push_back(n);
  ThresholdResult res;
  res.table = parallel_map(ns, jobs, [&](int n) { return verify_kobayashi(n, c, variant, mode, discrepancy, opts, divisor); });
  for (int n = n_max; n >= 1 && res.table[static_cast<std::size_t>(n - 1)].verdict == Verdict::holds; --n)
    res.threshold = n;
  return res;
}

inline nlohmann::ordered_json to_json_value(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["dim"] = cert.dim;
  j["n"] = cert.n ? nlohmann::ordered_json(*cert.n) : nlohmann::ordered_json(nullptr);
  j["c"] = cert.c.str();
  j["variant"] = to_string(cert.variant);
  j["mode"] = cert.mode;
  j["margin"] = cert.margin.str();
  j["D"] = cert.degree.str();
  j["verdict"] = to_string(cert.verdict);
  j["slack"] = cert.slack ? nlohmann::ordered_json(cert.slack->str()) : nlohmann::ordered_json(nullptr);
  j["argmax_p"] = cert.argmax_p ? nlohmann::ordered_json(*cert.argmax_p) : nlohmann::ordered_json(nullptr);
  j["assumptions"] = cert.assumptions;
  j["elapsed_ms"] = cert.elapsed_ms ? nlohmann::ordered_json(*cert.elapsed_ms) : nlohmann::ordered_json(nullptr);
  return j;
}

/// One-line JSON with the fixed field order
/// {dim, n, c, variant, mode, margin, D, verdict, slack, argmax_p, assumptions, elapsed_ms}.
inline std::string to_json(const Certificate& cert) { return to_json_value(cert).dump(); }

}  // namespace hypercert
