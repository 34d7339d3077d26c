#pragma once

// Dimension sweeps of the quantities whose limits are stated in closed form,
// one-step Richardson extrapolation, and limit reports against the closed
// forms. Guarded quantities are exact rationals up to a configurable
// dimension and outward enclosures beyond it.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypercert/certifier.hpp"
#include "hypercert/enclosure.hpp"
#include "hypercert/exactnum.hpp"
#include "hypercert/majorants.hpp"
#include "hypercert/parallel.hpp"
#include "hypercert/rootbound.hpp"
#include "hypercert/weights.hpp"

namespace hypercert {

enum class Quantity { c_hat, n_log_ratio, n_c_minus, rho0, lambda_const };

inline std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::c_hat: return "c_hat";
    case Quantity::n_log_ratio: return "n_log_ratio";
    case Quantity::n_c_minus: return "n_c_minus";
    case Quantity::rho0: return "rho0";
    case Quantity::lambda_const: return "lambda_const";
  }
  return "?";
}

inline Quantity parse_quantity(const std::string& s) {
  for (Quantity q : {Quantity::c_hat, Quantity::n_log_ratio, Quantity::n_c_minus, Quantity::rho0,
                     Quantity::lambda_const})
    if (to_string(q) == s) return q;
  throw Error("unknown quantity \"" + s + "\"");
}

struct SweepSample {
  Quantity quantity = Quantity::c_hat;
  int dim = 0;
  RatInterval enclosure;  // a point when the value is exact
  std::optional<std::string> error;

  Rat value() const { return enclosure.midpoint(); }
  Rat width() const { return enclosure.width(); }
  bool exact() const { return !error && enclosure.width().sign() == 0; }
  std::string decimal(int digits = 15) const { return to_decimal(value(), digits, Rounding::nearest); }
};

struct SweepOptions {
  int exact_max_dim = 64;
  mpfr_prec_t precision = 256;
  int jobs = 1;
  Rat log_width = rat_pow(Rat(10), -15);
};

inline std::vector<int> arithmetic_dims(int first, int last, int step) {
  if (step < 1 || first > last) throw Error("empty dimension range");
  std::vector<int> out;
  for (int d = first; d <= last; d += step) out.push_back(d);
  return out;
}

inline std::vector<int> geometric_dims(int first, int last, int factor) {
  if (factor < 2 || first < 1 || first > last) throw Error("empty dimension range");
  std::vector<int> out;
  for (long d = first; d <= last; d *= factor) out.push_back(static_cast<int>(d));
  return out;
}

namespace detail {

inline RatInterval log_of(const RatInterval& x, const Rat& width) {
  return {log_enclosure(x.lo, width).lo, log_enclosure(x.hi, width).hi};
}

inline RatInterval scale(const RatInterval& x, const Rat& k) {
  return k.sign() >= 0 ? RatInterval{x.lo * k, x.hi * k} : RatInterval{x.hi * k, x.lo * k};
}

inline RatInterval lambda_scale(const WeightSequence& w) {
  // c^dim / (dim^dim dim^2)
  return RatInterval::point(rat_pow(w.c, w.dim) / (rat_pow(Rat(w.dim), w.dim + 2L)));
}

inline RatInterval sample_exact(Quantity q, const WeightSequence& w, const CertificationMode& mode) {
  const MajorantPair m = c_pair_power(w);
  switch (q) {
    case Quantity::c_hat:
      return RatInterval::point(m.c_hat);
    case Quantity::n_c_minus:
      return RatInterval::point(Rat(w.dim) * m.c_minus_ub);
    case Quantity::rho0:
      return RatInterval::point(mode.iota / mode.margin - m.c_minus_ub);
    case Quantity::n_log_ratio:
      return RatInterval::point(m.c_hat / m.c_plain);  // log taken by the caller
    case Quantity::lambda_const: {
      const BoundProfile b = assemble_bounds(w, m, mode);
      if (b.rho0.sign() <= 0) throw Error("rho0 is not positive");
      const int p = exact_argmax(b);
      const Rat rel = dyadic(1, -32);
      const Rat hi = Rat(2) * root_upper(b.at(p) / b.rho0, static_cast<unsigned long>(p), rel);
      // The bound exceeds 2 max_p (...)^(1/p) by a relative amount <= rel.
      return RatInterval{hi * (Rat(1) - rel), hi} * lambda_scale(w);
    }
  }
  throw Error("unknown quantity");
}

inline RatInterval sample_enclosed(Quantity q, const WeightSequence& w, const CertificationMode& mode,
                                   mpfr_prec_t prec) {
  if (q == Quantity::n_log_ratio) return majorant_ratio_enclosure(w, prec).rat();
  const MajorantBounds mb = majorant_enclosure(w, prec);
  const FloatInterval rho0 = FloatInterval::from(mode.iota / mode.margin, prec) - mb.c_minus_ub;
  switch (q) {
    case Quantity::c_hat:
      return mb.c_hat.rat();
    case Quantity::n_c_minus:
      return (FloatInterval::from(Rat(w.dim), prec) * mb.c_minus_ub).rat();
    case Quantity::rho0:
      return rho0.rat();
    case Quantity::lambda_const: {
      if (!rho0.certainly_positive()) throw Error("rho0 is not certainly positive");
      const FloatInterval k = FloatInterval::from(mode.beta * mode.margin * degree_factor(w.dim), prec) * mb.c_hat;
      const std::vector<FloatInterval> t = tilde_ratio_enclosures(w, prec);
      std::optional<FloatInterval> best;
      for (int p = 1; p <= w.dim; ++p) {
        const FloatInterval g = (t[static_cast<std::size_t>(p - 1)] * k / rho0).root(static_cast<unsigned long>(p));
        best = best ? max(*best, g) : g;
      }
      return (FloatInterval::from(Rat(2), prec) * *best).rat() * lambda_scale(w);
    }
    default:
      break;
  }
  throw Error("unknown quantity");
}

}  // namespace detail

inline SweepSample sample_quantity(Quantity q, int dim, const Rat& c, Variant variant, const CertificationMode& mode,
                                   const SweepOptions& opts = {}) {
  SweepSample s;
  s.quantity = q;
  s.dim = dim;
  try {
    const WeightSequence w = build_weights(dim, c, variant);
    if (!validity_guard(w)) throw Error("dimension below guard threshold");
    const bool exact = dim <= opts.exact_max_dim;
    RatInterval v = exact ? detail::sample_exact(q, w, mode) : detail::sample_enclosed(q, w, mode, opts.precision);
    if (q == Quantity::n_log_ratio) v = detail::scale(detail::log_of(v, opts.log_width), Rat(dim));
    s.enclosure = v;
  } catch (const Error& e) {
    s.error = e.what();
  }
  return s;
}

inline std::vector<SweepSample> sweep(Quantity q, const std::vector<int>& dims, const Rat& c, Variant variant,
                                      const CertificationMode& mode, const SweepOptions& opts = {}) {
  return parallel_map(dims, opts.jobs, [&](int d) { return sample_quantity(q, d, c, variant, mode, opts); });
}

/// 2 v(2m) - v(m); exact on sequences L + a/m.
inline Rat richardson(const Rat& at_m, const Rat& at_2m) { return Rat(2) * at_2m - at_m; }

/// Enclosure of the extrapolated value from enclosures at m and 2m.
inline RatInterval richardson(const SweepSample& at_m, const SweepSample& at_2m) {
  if (at_m.error || at_2m.error) throw Error("cannot extrapolate from a failed sample");
  if (at_m.quantity != at_2m.quantity || at_2m.dim != 2 * at_m.dim)
    throw Error("richardson needs samples of one quantity at m and 2m");
  return {Rat(2) * at_2m.enclosure.lo - at_m.enclosure.hi, Rat(2) * at_2m.enclosure.hi - at_m.enclosure.lo};
}

struct Target {
  RatInterval value;
  std::string closed_form;
};

namespace detail {

inline std::string show(const Rat& x) { return x.is_integer() ? compact(x) : "(" + compact(x) + ")"; }

}  // namespace detail

/// Closed-form limit of each quantity for weights (dim/c)^(dim-i).
/// For c = 3 in paper mode with margin 1 these are e^3, 18, 9e^3, 17/2 and 12e^(7/2)/17.
inline Target limit_target(Quantity q, const Rat& c, const CertificationMode& mode) {
  const Rat w = rat_pow(Rat(10), -20);
  const RatInterval ec = exp_enclosure(c, w);
  const std::string cs = detail::show(c);
  switch (q) {
    case Quantity::c_hat:
      return {ec, "e^" + cs};
    case Quantity::n_log_ratio:
      return {RatInterval::point(Rat(2) * c * c), "2*" + cs + "^2"};
    case Quantity::n_c_minus:
      return {detail::scale(ec, c * c), cs + "^2*e^" + cs};
    case Quantity::rho0:
      return {RatInterval::point(mode.iota / mode.margin),
              mode.margin == Rat(1) ? compact(mode.iota) : detail::show(mode.iota) + "/" + detail::show(mode.margin)};
    case Quantity::lambda_const:
      return {lambda_constant(c, mode), "2*" + cs + "*beta*e^" + cs + "*margin^2/iota"};
  }
  throw Error("unknown quantity");
}

/// Upper bound on |x - t| / t over all x in `value` and t in `target` (t > 0).
inline Rat relative_deviation(const RatInterval& value, const RatInterval& target) {
  if (target.lo.sign() <= 0) throw Error("target must be positive");
  const Rat a = abs(value.hi - target.lo);
  const Rat b = abs(value.lo - target.hi);
  return (a < b ? b : a) / target.lo;
}

struct LimitReport {
  Quantity quantity = Quantity::c_hat;
  std::vector<SweepSample> samples;
  std::optional<RatInterval> extrapolated;  // from the largest (m, 2m) pair
  Target target;
  std::optional<Rat> extrapolated_deviation;
  Rat last_deviation;  // deviation of the largest-dimension sample

  std::string render() const {
    std::ostringstream os;
    os << "quantity " << to_string(quantity) << "\n";
    for (const auto& s : samples) {
      if (s.error) {
        os << "  dim " << s.dim << ": error: " << *s.error << "\n";
      } else {
        os << "  dim " << s.dim << ": " << s.decimal() << "\n";
      }
    }
    os << "  target " << target.closed_form << " = " << to_decimal(target.value.midpoint(), 15, Rounding::nearest)
       << "\n";
    os << "  largest-dim deviation <= " << to_scientific(last_deviation, 4, Rounding::up) << "\n";
    if (extrapolated) {
      os << "  extrapolated " << to_decimal(extrapolated->midpoint(), 15, Rounding::nearest) << ", deviation <= "
         << to_scientific(*extrapolated_deviation, 4, Rounding::up) << "\n";
    }
    return os.str();
  }
};

/// Report over samples already computed for quantity q.
inline LimitReport limit_report(Quantity q, std::vector<SweepSample> samples, const Rat& c,
                                const CertificationMode& mode) {
  LimitReport r;
  r.quantity = q;
  r.samples = std::move(samples);
  r.target = limit_target(q, c, mode);
  const SweepSample* last = nullptr;
  for (const auto& s : r.samples) {
    if (s.error) throw Error("sample at dim " + std::to_string(s.dim) + " failed: " + *s.error);
    if (!last || s.dim > last->dim) last = &s;
  }
  if (!last) throw Error("empty sweep");
  r.last_deviation = relative_deviation(last->enclosure, r.target.value);
  const SweepSample* pair_lo = nullptr;
  const SweepSample* pair_hi = nullptr;
  for (const auto& a : r.samples)
    for (const auto& b : r.samples)
      if (b.dim == 2 * a.dim && (!pair_hi || b.dim > pair_hi->dim)) {
        pair_lo = &a;
        pair_hi = &b;
      }
  if (pair_hi) {
    r.extrapolated = richardson(*pair_lo, *pair_hi);
    r.extrapolated_deviation = relative_deviation(*r.extrapolated, r.target.value);
  }
  return r;
}

inline LimitReport limit_report(Quantity q, const std::vector<int>& dims, const Rat& c, Variant variant,
                                const CertificationMode& mode, const SweepOptions& opts = {}) {
  return limit_report(q, sweep(q, dims, c, variant, mode, opts), c, mode);
}

inline std::string csv_header() { return "quantity,dim,value_decimal,value_exact,enclosure_width"; }

inline std::string to_csv_row(const SweepSample& s, int digits = 15) {
  std::string row = to_string(s.quantity) + "," + std::to_string(s.dim) + ",";
  if (s.error) return row + "error," + *s.error + ",";
  return row + s.decimal(digits) + "," + s.value().str() + "," + to_scientific(s.width(), 3, Rounding::up);
}

inline std::string to_csv(const std::vector<SweepSample>& samples, int digits = 15) {
  std::string out = csv_header() + "\n";
  for (const auto& s : samples) out += to_csv_row(s, digits) + "\n";
  return out;
}

}  // namespace hypercert
