#pragma once

// Command-line front end: certify, threshold, sweep, rootbound, selfcheck.
// Exit codes: 0 success (and every requested verdict holds), 1 a verdict
// other than holds (or a failed self-check), 2 usage or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypercert/asymptotics.hpp"
#include "hypercert/certifier.hpp"
#include "hypercert/exactnum.hpp"
#include "hypercert/rootbound.hpp"
#include "hypercert/selfcheck.hpp"
#include "hypercert/weights.hpp"

namespace hypercert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

/// Settings shared by every subcommand.
struct RunConfig {
  std::string c = "3";
  std::string variant = "rational-base";
  std::string mode = "paper";
  std::optional<std::string> iota;
  std::optional<std::string> beta;
  std::string beta_width = "1e-12";
  std::optional<std::string> margin;
  int jobs = 1;
  int digits = 15;

  Rat c_value() const {
    const Rat v = Rat::parse(c);
    if (v < Rat(1)) throw Error("const must be at least 1");
    return v;
  }
  Variant variant_value() const { return parse_variant(variant); }

  /// Named mode, or an inline one when --iota is given.
  CertificationMode mode_value() const {
    std::optional<Rat> m;
    if (margin) m = Rat::parse(*margin);
    CertificationMode out;
    if (iota) {
      out.iota = Rat::parse(*iota);
      out.margin = m ? *m : Rat(1);
      out.label = "custom";
      out.beta = beta ? Rat::parse(*beta) : exp_enclosure(Rat(1, 2), Rat::parse(beta_width)).hi;
    } else {
      out = mode_by_name(mode, m);
      if (beta) {
        out.beta = Rat::parse(*beta);
        out.label += "+beta";
      } else if (beta_width != "1e-12") {
        out.beta = exp_enclosure(Rat(1, 2), Rat::parse(beta_width)).hi;
      }
    }
    out.validate();
    return out;
  }
};

namespace detail {

/// "a:b" -> [a, b].
inline std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error("range must look like a:b");
  const int a = std::stoi(s.substr(0, colon));
  const int b = std::stoi(s.substr(colon + 1));
  if (a > b) throw Error("empty range " + s);
  return {a, b};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Flat "key = value" config; '#' starts a comment. Boolean keys accept
/// true/false. Returns the equivalent flags.
inline std::vector<std::string> config_args(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") {
      command = value;
    } else if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot write " + path);
    }
    os_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

inline void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--const", cfg.c, "weight constant c >= 1, as p/q or decimal")->capture_default_str();
  sub.add_option("--variant", cfg.variant, "weight base: rational-base (r = dim/c) or ceil-base (r = ceil(dim/c))")
      ->capture_default_str();
  sub.add_option("--mode", cfg.mode, "assumption set: paper | conservative")->capture_default_str();
  sub.add_option("--iota", cfg.iota, "inline mode: lower bound for I0+/I0~ (overrides --mode)");
  sub.add_option("--beta", cfg.beta, "explicit upper bound for |B| (default: upper enclosure of e^(1/2))");
  sub.add_option("--beta-width", cfg.beta_width, "width of the e^(1/2) enclosure used for beta")
      ->capture_default_str();
  sub.add_option("--margin", cfg.margin, "safety factor >= 1 (mode default: paper 11/10, conservative 3/2)");
  sub.add_option("--jobs", cfg.jobs, "worker threads")
      ->envname("HYPERCERT_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("--digits", cfg.digits, "fractional digits in decimal renderings")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  // --config FILE is expanded in place before parsing; later flags win.
  std::vector<std::string> argv;
  std::string config_command;
  try {
    for (std::size_t i = 0; i < argv_in.size(); ++i) {
      if (argv_in[i] == "--config" && i + 1 < argv_in.size()) {
        auto extra = detail::config_args(argv_in[++i], config_command);
        argv.insert(argv.end(), extra.begin(), extra.end());
      } else if (argv_in[i].rfind("--config=", 0) == 0) {
        auto extra = detail::config_args(argv_in[i].substr(9), config_command);
        argv.insert(argv.end(), extra.begin(), extra.end());
      } else {
        argv.push_back(argv_in[i]);
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::vector<std::string> commands{"certify", "threshold", "sweep", "rootbound", "selfcheck"};
  const bool has_command = std::any_of(argv.begin(), argv.end(), [&](const std::string& a) {
    return std::find(commands.begin(), commands.end(), a) != commands.end();
  });
  if (!has_command && !config_command.empty()) {
    // Subcommand options must follow the subcommand name.
    argv.insert(argv.begin(), config_command);
  }

  CLI::App app{"hypercert: exact certification of hyperbolicity degree bounds"};
  app.name("hypercert");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.add_option("--config", "flat key = value file mirroring the flags (expanded before parsing)");

  RunConfig cfg;
  int result = kExitOk;
  std::function<int()> action;

  // certify
  auto* certify = app.add_subcommand("certify", "certify a degree bound per dimension, one JSON line each");
  detail::add_common(*certify, cfg);
  std::string target = "kobayashi";
  std::optional<int> n_single, dim_single;
  std::optional<std::string> n_range, dim_range, degree;
  std::string discrepancy = "1", divisor = "1", json_path = "-";
  bool timing = false, exact = false;
  certify->add_option("--target", target, "kobayashi (dimension 2n, degree n^(2n)/discrepancy) or gg")
      ->check(CLI::IsMember({"kobayashi", "gg"}))
      ->capture_default_str();
  certify->add_option("--n", n_single, "Kobayashi dimension n");
  certify->add_option("--n-range", n_range, "Kobayashi dimensions a:b");
  certify->add_option("--dim", dim_single, "Green-Griffiths dimension");
  certify->add_option("--dim-range", dim_range, "Green-Griffiths dimensions a:b");
  certify->add_option("--degree", degree, "gg target degree D (default (dim/2)^dim)");
  certify->add_option("--discrepancy", discrepancy, "linear transfer discrepancy >= 1")->capture_default_str();
  certify->add_option("--degree-divisor", divisor, "certify n^(2n)/(discrepancy * k^n) instead of n^(2n)")
      ->capture_default_str();
  certify->add_option("--json", json_path, "output path, - for stdout")->capture_default_str();
  certify->add_flag("--timing", timing, "record elapsed_ms (makes output run-dependent)");
  certify->add_flag("--exact", exact, "skip the enclosure filter and evaluate exactly");
  certify->callback([&] {
    action = [&]() -> int {
      const Rat c = cfg.c_value();
      const Variant variant = cfg.variant_value();
      const CertificationMode mode = cfg.mode_value();
      CertifyOptions opts;
      opts.timing = timing;
      opts.exact = exact;
      std::vector<int> dims;
      const bool kob = target == "kobayashi";
      const auto& single = kob ? n_single : dim_single;
      const auto& range = kob ? n_range : dim_range;
      if (single && range) throw CLI::ValidationError("give a single value or a range, not both");
      if (single) {
        dims.push_back(*single);
      } else if (range) {
        const auto [a, b] = detail::parse_range(*range);
        for (int d = a; d <= b; ++d) dims.push_back(d);
      } else {
        throw CLI::ValidationError(kob ? "--n or --n-range is required" : "--dim or --dim-range is required");
      }
      if (dims.front() < 1) throw CLI::ValidationError("dimensions must be positive");
      const Rat disc = Rat::parse(discrepancy);
      const Rat div = Rat::parse(divisor);
      const std::optional<Rat> fixed_degree = degree ? std::optional<Rat>(Rat::parse(*degree)) : std::nullopt;
      const auto certs = parallel_map(dims, cfg.jobs, [&](int d) {
        if (kob) return verify_kobayashi(d, c, variant, mode, disc, opts, div);
        const Rat deg = fixed_degree ? *fixed_degree : rat_pow(Rat(d, 2), d);
        return verify_gg(d, c, variant, mode, deg, opts);
      });
      detail::Output o(json_path, out);
      bool all_hold = true;
      for (const auto& cert : certs) {
        o.get() << to_json(cert) << "\n";
        all_hold = all_hold && cert.verdict == Verdict::holds;
      }
      return all_hold ? kExitOk : kExitVerdict;
    };
  });

  // threshold
  auto* threshold = app.add_subcommand("threshold", "smallest N with a certificate for every n in [N, n_max]");
  detail::add_common(*threshold, cfg);
  int n_max = 300;
  std::string t_json = "-", t_disc = "1", t_div = "1";
  threshold->add_option("--n-max", n_max, "largest n scanned")->check(CLI::PositiveNumber)->capture_default_str();
  threshold->add_option("--discrepancy", t_disc, "linear transfer discrepancy >= 1")->capture_default_str();
  threshold->add_option("--degree-divisor", t_div, "certify n^(2n)/(discrepancy * k^n)")->capture_default_str();
  threshold->add_option("--json", t_json, "output path, - for stdout")->capture_default_str();
  threshold->callback([&] {
    action = [&]() -> int {
      const CertificationMode mode = cfg.mode_value();
      const ThresholdResult res = find_threshold(cfg.c_value(), cfg.variant_value(), mode, Rat::parse(t_disc), n_max,
                                                 cfg.jobs, {}, Rat::parse(t_div));
      nlohmann::ordered_json j;
      j["c"] = cfg.c_value().str();
      j["variant"] = to_string(cfg.variant_value());
      j["mode"] = mode.label;
      j["margin"] = mode.margin.str();
      j["discrepancy"] = Rat::parse(t_disc).str();
      j["n_max"] = n_max;
      j["N"] = res.threshold ? nlohmann::ordered_json(*res.threshold) : nlohmann::ordered_json("none");
      nlohmann::ordered_json table = nlohmann::ordered_json::array();
      for (const auto& cert : res.table) {
        nlohmann::ordered_json row;
        row["n"] = *cert.n;
        row["dim"] = cert.dim;
        row["verdict"] = to_string(cert.verdict);
        row["slack"] = cert.slack ? nlohmann::ordered_json(to_decimal(*cert.slack, cfg.digits, Rounding::down))
                                  : nlohmann::ordered_json(nullptr);
        table.push_back(row);
      }
      j["table"] = table;
      detail::Output o(t_json, out);
      o.get() << j.dump() << "\n";
      return res.threshold ? kExitOk : kExitVerdict;
    };
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep of an asymptotic quantity over dimensions");
  detail::add_common(*sweep_cmd, cfg);
  std::string quantity = "c_hat", csv_path = "-";
  std::optional<std::string> dims_list, dims_range, dims_geo, report_path;
  int exact_max_dim = 64;
  sweep_cmd->add_option("--quantity", quantity, "c_hat | n_log_ratio | n_c_minus | rho0 | lambda_const")
      ->capture_default_str();
  sweep_cmd->add_option("--dims", dims_list, "comma-separated dimensions");
  sweep_cmd->add_option("--dims-range", dims_range, "arithmetic progression first:last[:step]");
  sweep_cmd->add_option("--dims-geometric", dims_geo, "geometric progression first:last:factor");
  sweep_cmd->add_option("--exact-max-dim", exact_max_dim, "largest dimension evaluated exactly")
      ->capture_default_str();
  sweep_cmd->add_option("--csv", csv_path, "output path, - for stdout")->capture_default_str();
  sweep_cmd->add_option("--report", report_path, "also write a limit report (path, - for stdout)");
  sweep_cmd->callback([&] {
    action = [&]() -> int {
      std::vector<int> dims;
      const int given = (dims_list ? 1 : 0) + (dims_range ? 1 : 0) + (dims_geo ? 1 : 0);
      if (given != 1) throw CLI::ValidationError("give exactly one of --dims, --dims-range, --dims-geometric");
      if (dims_list) {
        for (const auto& s : detail::split(*dims_list, ',')) dims.push_back(std::stoi(s));
      } else {
        const auto parts = detail::split(dims_range ? *dims_range : *dims_geo, ':');
        if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("progression must be a:b or a:b:k");
        const int a = std::stoi(parts[0]), b = std::stoi(parts[1]);
        const int k = parts.size() == 3 ? std::stoi(parts[2]) : (dims_range ? 1 : 2);
        dims = dims_range ? arithmetic_dims(a, b, k) : geometric_dims(a, b, k);
      }
      const Quantity q = parse_quantity(quantity);
      SweepOptions opts;
      opts.jobs = cfg.jobs;
      opts.exact_max_dim = exact_max_dim;
      const CertificationMode mode = cfg.mode_value();
      const auto samples = sweep(q, dims, cfg.c_value(), cfg.variant_value(), mode, opts);
      {
        detail::Output o(csv_path, out);
        o.get() << to_csv(samples, cfg.digits);
      }
      const bool ok =
          std::none_of(samples.begin(), samples.end(), [](const SweepSample& s) { return s.error.has_value(); });
      if (report_path && ok) {
        const LimitReport r = limit_report(q, samples, cfg.c_value(), mode);
        detail::Output o(*report_path, out);
        o.get() << r.render();
      } else if (report_path) {
        err << "limit report skipped: some samples failed\n";
      }
      return ok ? kExitOk : kExitVerdict;
    };
  });

  // rootbound
  auto* rootbound = app.add_subcommand("rootbound", "Fujiwara-type bound and largest-root interval");
  std::string coeffs, width = "1e-6";
  int rb_digits = 6;
  rootbound->add_option("--coeffs", coeffs, "leading-first coefficients, comma separated (p/q or decimal)")
      ->required();
  rootbound->add_option("--width", width, "root interval width")->capture_default_str();
  rootbound->add_option("--digits", rb_digits, "fractional digits")->check(CLI::PositiveNumber)->capture_default_str();
  rootbound->callback([&] {
    action = [&]() -> int {
      PolyCoeffs poly;
      for (const auto& s : detail::split(coeffs, ',')) poly.coeffs.push_back(Rat::parse(detail::trim(s)));
      const Rat bound = fujiwara_bound(poly);
      const auto root = isolate_max_root(poly, Rat::parse(width));
      nlohmann::ordered_json j;
      j["coeffs"] = nlohmann::ordered_json::array();
      for (const auto& c : poly.coeffs) j["coeffs"].push_back(c.str());
      j["bound"] = bound.str();
      j["bound_decimal"] = to_decimal(bound, rb_digits, Rounding::up);
      j["dominates"] = dominates_roots(poly, bound);
      if (root) {
        j["max_root"] = {{"lo", root->lo.str()},
                         {"hi", root->hi.str()},
                         {"lo_decimal", to_decimal(root->lo, rb_digits, Rounding::down)},
                         {"hi_decimal", to_decimal(root->hi, rb_digits, Rounding::up)}};
      } else {
        j["max_root"] = "no real root";
      }
      out << j.dump() << "\n";
      return kExitOk;
    };
  });

  // selfcheck
  auto* selfcheck = app.add_subcommand("selfcheck", "run the invariant suite on small inputs");
  int max_dim = 40;
  selfcheck->add_option("--max-dim", max_dim, "largest dimension exercised")
      ->check(CLI::Range(8, 400))
      ->capture_default_str();
  selfcheck->callback([&] {
    action = [&]() -> int {
      const auto results = run_selfcheck(max_dim);
      bool ok = true;
      for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
        ok = ok && r.passed;
      }
      return ok ? kExitOk : kExitVerdict;
    };
  });

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
    result = action ? action() : kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: malformed number (" << e.what() << ")\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range (" << e.what() << ")\n";
    return kExitUsage;
  }
  return result;
}

inline int dispatch(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, out, err);
}

}  // namespace hypercert::cli
