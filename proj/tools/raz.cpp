// raz: stability regions, basin bounds and simulations for
// u'(t) = mu u(t) + sigma u(t - a - c u(t)).

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "razumikhin/basin.hpp"
#include "razumikhin/errors.hpp"
#include "razumikhin/functional.hpp"
#include "razumikhin/integrator.hpp"
#include "razumikhin/model.hpp"
#include "razumikhin/output.hpp"
#include "razumikhin/regions.hpp"

namespace {

using raz::Cell;
using raz::OutputRecord;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_number(s.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

raz::InitialFunction parse_phi(const std::string& spec, const raz::ModelParams& p) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("phi must look like kind:args");
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> args = parse_list(spec.substr(colon + 1));
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw UsageError("phi '" + kind + "' takes " + std::to_string(n) + " value(s)");
  };
  if (kind == "const") {
    want(1);
    return raz::InitialFunction::constant(args[0]);
  }
  if (kind == "ramp") {
    want(3);
    return raz::InitialFunction::ramp(args[0], args[1], args[2]);
  }
  if (kind == "example1") {
    want(1);
    return raz::make_example1_phi(args[0], p);
  }
  if (kind == "example2") {
    want(1);
    return raz::make_example2_phi(args[0], p);
  }
  throw UsageError("unknown phi kind '" + kind + "'");
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{std::string("none")}; }

void add_params(OutputRecord& rec, const raz::ModelParams& p) {
  rec.input("mu", p.mu);
  rec.input("sigma", p.sigma);
  rec.input("a", p.a);
  rec.input("c", p.c);
}

void add_bounds(OutputRecord& rec, const raz::BasinBounds& b) {
  rec.result("delta1", b.delta1);
  rec.result("best_delta2", b.delta2);
  rec.result("best_delta2_at", b.delta2_at);
  if (b.delta_star) {
    rec.result("delta_star", b.delta_star->value);
    rec.result("delta_star_below_a_over_c", std::string(b.delta_star->within_window ? "true" : "false"));
  } else {
    rec.result("delta_star", std::string("none"));
  }
}

template <class F>
Cell try_cell(F&& f) {
  try {
    return Cell{f()};
  } catch (const raz::Error& e) {
    return Cell{std::string("error: ") + e.what()};
  }
}

OutputRecord cmd_tables(double a) {
  OutputRecord rec;
  rec.command = "tables";
  rec.input("a", a);
  rec.columns = {"table", "region", "mu", "sigma"};
  const char* names[] = {"P1", "P2", "P3"};
  for (int k = 1; k <= 3; ++k) {
    for (double mu : {-5.0, -2.0, 0.0}) {
      rec.row({1.0, names[k - 1], mu, try_cell([&] { return raz::boundary_sigma_for_mu(k, mu, a); })});
    }
  }
  for (double mu : {-5.0, -2.0, 0.0}) {
    rec.row({1.0, "SigmaStar", mu, try_cell([&] { return raz::sigma_star_boundary(mu, a); })});
  }
  for (int k = 1; k <= 3; ++k) {
    for (double s : {-5.0, -2.0, -1.0}) {
      rec.row({2.0, names[k - 1], try_cell([&] { return raz::boundary_mu_for_sigma(k, s, a); }), s});
    }
  }
  for (double s : {-5.0, -2.0, -1.0}) {
    rec.row({2.0, "SigmaStar", try_cell([&] { return raz::sigma_star_mu_for_sigma(s, a); }), s});
  }
  for (int k = 1; k <= 3; ++k) {
    try {
      const raz::BoundaryPoint pt = raz::rightmost_point(k, a);
      rec.row({3.0, names[k - 1], pt.mu, pt.sigma});
    } catch (const raz::Error& e) {
      rec.row({3.0, names[k - 1], std::string("error: ") + e.what(), std::string("error")});
    }
  }
  rec.row({3.0, "SigmaStar", 1.0 / a, -1.0 / a});
  return rec;
}

OutputRecord cmd_region_boundary(int k, double a, std::size_t n, double mu_min) {
  OutputRecord rec;
  rec.command = "region-boundary";
  rec.input("k", std::to_string(k));
  rec.input("a", a);
  rec.input("n", std::to_string(n));
  rec.input("mu_min", mu_min);
  const raz::BoundaryCurve curve = raz::sample_boundary(k, a, n, mu_min);
  rec.result("solver_tol", curve.solver_tol);
  rec.result("failures", static_cast<double>(curve.failures));
  rec.columns = {"mu", "sigma"};
  for (const auto& pt : curve.points) rec.row({pt.mu, pt.sigma});
  return rec;
}

OutputRecord cmd_verdict(const raz::ModelParams& p, int k_max) {
  OutputRecord rec;
  rec.command = "verdict";
  add_params(rec, p);
  rec.input("k_max", std::to_string(k_max));
  const raz::RegionVerdict v = raz::verdict(p, k_max);
  rec.result("verdict", v.label());
  rec.result("region", std::string(raz::to_string(raz::classify(p))));
  if (p.c != 0.0) {
    if (v.kind == raz::RegionVerdict::Kind::ConeCertified) {
      rec.result("history_bound_abs_m0", p.a / std::abs(p.c));
    } else if (v.kind == raz::RegionVerdict::Kind::PkCertified) {
      add_bounds(rec, raz::basin_bounds(p, v.k));
    }
  }
  return rec;
}

OutputRecord cmd_basin(const raz::ModelParams& p, int k, std::optional<double> sigma_min,
                       std::optional<double> sigma_max, std::size_t n) {
  OutputRecord rec;
  rec.command = "basin";
  add_params(rec, p);
  rec.input("k", std::to_string(k));
  if (!sigma_min && !sigma_max) {
    add_bounds(rec, raz::basin_bounds(p, k));
    return rec;
  }
  if (!sigma_min || !sigma_max || n < 2) {
    throw UsageError("a sweep needs --sigma-min, --sigma-max and --n >= 2");
  }
  rec.input("sigma_min", *sigma_min);
  rec.input("sigma_max", *sigma_max);
  rec.input("n", std::to_string(n));
  std::vector<raz::ModelParams> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = *sigma_min + (*sigma_max - *sigma_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    pts.emplace_back(p.mu, s, p.a, p.c);
  }
  const auto bounds = raz::basin_sweep(pts, k);
  rec.columns = {"sigma", "delta1", "best_delta2", "best_delta2_at", "delta_star"};
  const Cell na = std::string("NA");
  for (std::size_t i = 0; i < n; ++i) {
    if (!bounds[i]) {
      rec.row({pts[i].sigma, na, na, na, na});
      continue;
    }
    const auto& b = *bounds[i];
    rec.row({pts[i].sigma, b.delta1, b.delta2, b.delta2_at, b.delta_star ? Cell{b.delta_star->value} : na});
  }
  return rec;
}

OutputRecord cmd_p_value(const raz::ModelParams& p, int k, double delta, bool oracle, std::size_t n_grid) {
  OutputRecord rec;
  rec.command = "p-value";
  add_params(rec, p);
  rec.input("k", std::to_string(k));
  rec.input("delta", delta);
  const raz::PValue v = raz::p_value(p, delta, k);
  rec.result("p_value", v.value);
  rec.result("exact", std::string(v.exact ? "true" : "false"));
  rec.result("predicate", std::string(v.value < delta ? "true" : "false"));
  if (oracle) {
    rec.input("n_grid", std::to_string(n_grid));
    rec.result("p_bruteforce", raz::p_bruteforce(p, delta, k, n_grid));
  }
  return rec;
}

OutputRecord cmd_simulate(const raz::ModelParams& p, const std::string& phi_spec, raz::SimConfig cfg,
                          std::size_t every) {
  const raz::InitialFunction phi = parse_phi(phi_spec, p);
  OutputRecord rec;
  rec.command = "simulate";
  add_params(rec, p);
  rec.input("phi", phi.describe());
  rec.input("dt", cfg.dt);
  rec.input("t_end", cfg.t_end);
  if (cfg.escape_radius) rec.input("escape_radius", *cfg.escape_radius);
  if (cfg.history_depth) rec.input("history_depth", *cfg.history_depth);
  const raz::Trajectory tr = raz::simulate(p, phi, cfg);
  rec.result("escape_time", opt_cell(tr.escape_time));
  rec.result("short_delay", std::string(tr.short_delay ? "true" : "false"));
  rec.result("max_abs_u", tr.max_abs());
  rec.columns = {"t", "u", "deviated_argument", "delay"};
  const std::size_t last = tr.times.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    if (i % every != 0 && i != last) continue;
    const double t = tr.times[i];
    const double u = tr.values[i];
    const double alpha = raz::deviated_argument(t, u, p);
    rec.row({t, u, alpha, t - alpha});
  }
  return rec;
}

OutputRecord cmd_legacy_region(const std::string& which, double a, double mu_min, double mu_max,
                               double sigma_min, double sigma_max, std::size_t n) {
  if (which != "barnea" && which != "myshkis") throw UsageError("region must be barnea or myshkis");
  if (n < 2) throw UsageError("--n must be at least 2");
  OutputRecord rec;
  rec.command = "legacy-region";
  rec.input("region", which);
  rec.input("a", a);
  rec.input("mu_min", mu_min);
  rec.input("mu_max", mu_max);
  rec.input("sigma_min", sigma_min);
  rec.input("sigma_max", sigma_max);
  rec.input("n", std::to_string(n));
  rec.columns = {"mu", "sigma", "inside"};
  auto step = [n](double lo, double hi, std::size_t i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mu = step(mu_min, mu_max, i);
      const double s = step(sigma_min, sigma_max, j);
      const bool in = which == "barnea" ? raz::barnea_x2_contains(mu, s, a) : raz::myshkis_contains(mu, s, a);
      rec.row({mu, s, in ? 1.0 : 0.0});
    }
  }
  return rec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Razumikhin stability certificates for a state-dependent delay equation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string out_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  double mu = 0.0, sigma = -1.0, a = 1.0, c = 0.0, delta = 1.0;
  int k = 2;
  auto model_opts = [&](CLI::App* sub, bool need_c, bool need_sigma = true) {
    sub->add_option("--mu", mu, "Instantaneous rate")->required();
    auto* sopt = sub->add_option("--sigma", sigma, "Delayed rate");
    if (need_sigma) sopt->required();
    sub->add_option("--a", a, "Base delay")->capture_default_str();
    auto* copt = sub->add_option("--c", c, "State-dependence of the delay")->capture_default_str();
    if (need_c) copt->required();
  };

  OutputRecord rec;
  std::function<OutputRecord()> run;

  auto* tables = app.add_subcommand("tables", "Boundary tables recomputed at a given a");
  tables->add_option("--a", a, "Base delay")->capture_default_str();
  tables->callback([&] { run = [&] { return cmd_tables(a); }; });

  int kb = 1;
  std::size_t n = 50;
  double mu_min = -2.0;
  auto* boundary = app.add_subcommand("region-boundary", "Sample the boundary of {P(1,0,k) < 1}");
  boundary->add_option("--k", kb, "1, 2, 3, or 0 for the exact stability region")->required();
  boundary->add_option("--a", a, "Base delay")->capture_default_str();
  boundary->add_option("--n", n, "Number of points")->capture_default_str();
  boundary->add_option("--mu-min", mu_min, "Leftmost mu")->capture_default_str();
  boundary->callback([&] {
    if (kb < 0 || kb > 3) throw UsageError("--k must be 0, 1, 2 or 3");
    run = [&] { return cmd_region_boundary(kb, a, n, mu_min); };
  });

  int k_max = 3;
  auto* verdict = app.add_subcommand("verdict", "Classify (mu, sigma) and report basin bounds");
  model_opts(verdict, false);
  verdict->add_option("--k-max", k_max, "Largest k to try")->check(CLI::Range(1, 3))->capture_default_str();
  verdict->callback([&] { run = [&] { return cmd_verdict(raz::ModelParams(mu, sigma, a, c), k_max); }; });

  std::optional<double> sigma_min, sigma_max;
  std::size_t n_sweep = 0;
  auto* basin = app.add_subcommand("basin", "Basin bounds at a point, or swept over sigma");
  model_opts(basin, true, false);
  basin->add_option("--k", k, "Envelope order")->check(CLI::Range(1, 3))->capture_default_str();
  basin->add_option("--sigma-min", sigma_min, "Sweep start");
  basin->add_option("--sigma-max", sigma_max, "Sweep end");
  basin->add_option("--n", n_sweep, "Sweep points");
  basin->callback([&] {
    if (basin->count("--sigma") == 0 && !sigma_min && !sigma_max) {
      throw UsageError("basin needs --sigma, or --sigma-min and --sigma-max for a sweep");
    }
    run = [&] { return cmd_basin(raz::ModelParams(mu, sigma, a, c), k, sigma_min, sigma_max, n_sweep); };
  });

  bool oracle = false;
  std::size_t n_grid = 4096;
  auto* pval = app.add_subcommand("p-value", "Evaluate P(delta, c, k)");
  model_opts(pval, false);
  pval->add_option("--k", k, "Envelope order")->check(CLI::Range(1, 3))->capture_default_str();
  pval->add_option("--delta", delta, "Ball radius")->capture_default_str();
  pval->add_flag("--oracle", oracle, "Also report the lattice maximum");
  pval->add_option("--n-grid", n_grid, "Lattice size for --oracle")->capture_default_str();
  pval->callback([&] {
    run = [&] { return cmd_p_value(raz::ModelParams(mu, sigma, a, c), k, delta, oracle, n_grid); };
  });

  std::string phi_spec;
  raz::SimConfig cfg;
  std::optional<double> escape_radius, history_depth;
  std::size_t every = 1;
  auto* sim = app.add_subcommand("simulate", "Integrate the delay equation from an initial function");
  model_opts(sim, false);
  sim->add_option("--phi", phi_spec, "const:v | ramp:plateau,start,v0 | example1:delta | example2:delta")
      ->required();
  sim->add_option("--dt", cfg.dt, "Step size, at most a/10")->capture_default_str();
  sim->add_option("--t-end", cfg.t_end, "Final time")->capture_default_str();
  sim->add_option("--escape-radius", escape_radius, "Record the first time |u| exceeds this");
  sim->add_flag("--stop-at-escape", cfg.stop_at_escape, "Stop once the escape radius is crossed");
  sim->add_option("--history-depth", history_depth, "Fail if history older than this is read");
  sim->add_option("--every", every, "Emit every n-th step")->check(CLI::PositiveNumber)->capture_default_str();
  sim->callback([&] {
    cfg.escape_radius = escape_radius;
    cfg.history_depth = history_depth;
    run = [&] { return cmd_simulate(raz::ModelParams(mu, sigma, a, c), phi_spec, cfg, every); };
  });

  std::string which;
  double lmu_min = -1.0, lmu_max = 0.5, lsig_min = -2.0, lsig_max = 0.0;
  std::size_t ln = 41;
  auto* legacy = app.add_subcommand("legacy-region", "Membership grid for the Barnea or Myshkis region");
  legacy->add_option("region", which, "barnea or myshkis")->required();
  legacy->add_option("--a", a, "Base delay")->capture_default_str();
  legacy->add_option("--mu-min", lmu_min)->capture_default_str();
  legacy->add_option("--mu-max", lmu_max)->capture_default_str();
  legacy->add_option("--sigma-min", lsig_min)->capture_default_str();
  legacy->add_option("--sigma-max", lsig_max)->capture_default_str();
  legacy->add_option("--n", ln, "Grid points per axis")->capture_default_str();
  legacy->callback([&] {
    run = [&] { return cmd_legacy_region(which, a, lmu_min, lmu_max, lsig_min, lsig_max, ln); };
  });

  try {
    app.parse(argc, argv);
    rec = run();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const raz::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const raz::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& os = out_path.empty() ? std::cout : file;
  if (format == "json") {
    raz::write_json(os, rec);
  } else {
    raz::write_csv(os, rec);
  }
  return 0;
}
