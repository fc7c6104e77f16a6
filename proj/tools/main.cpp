// Command line front end: catalog browsing, single estimates, rate sweeps,
// verification suites, and CSV/SVG artifact emission with reproducible seeds.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error,
// 3 zero accepted mass, 4 degenerate sweep (< 3 usable grid points).
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proxsmooth/catalog.hpp"
#include "proxsmooth/errors.hpp"
#include "proxsmooth/estimator.hpp"
#include "proxsmooth/quadrature.hpp"
#include "proxsmooth/rates.hpp"
#include "proxsmooth/report.hpp"
#include "proxsmooth/verify.hpp"

namespace ps = proxsmooth;
using nlohmann::json;

namespace {

std::string join_command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    const std::string arg = argv[i];
    if (arg.find(' ') != std::string::npos) {
      out += '"' + arg + '"';
    } else {
      out += arg;
    }
  }
  return out;
}

std::string vec_to_string(const ps::Vec& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += ps::format_csv_number(v[i]);
  }
  return out + "]";
}

json vec_to_json(const ps::Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json manifest_to_json(const ps::RunManifest& manifest) {
  return json{{"version", manifest.version},
              {"command", manifest.command_line},
              {"seed", manifest.seed},
              {"instances", manifest.instance_ids},
              {"grid", manifest.grid},
              {"outputs", manifest.outputs}};
}

// Shared override plumbing: --x and --lambda replace the catalog defaults.
ps::ProxInstance configured_instance(const std::string& id,
                                     const std::vector<double>& x_override,
                                     const std::optional<double>& lambda) {
  ps::ProxInstance inst = ps::catalog::make_instance(id);
  if (!x_override.empty()) {
    if (static_cast<int>(x_override.size()) != inst.dim()) {
      throw ps::ParameterError("--x has " + std::to_string(x_override.size()) +
                               " coordinates but '" + inst.id + "' has dimension " +
                               std::to_string(inst.dim()));
    }
    for (int i = 0; i < inst.dim(); ++i) inst.x[i] = x_override[i];
  }
  if (lambda) inst.lambda = *lambda;
  inst.validate();
  return inst;
}

struct CatalogArgs {
  bool as_json = false;
};

int cmd_catalog(const CatalogArgs& args) {
  const auto entries = ps::catalog::list_entries();
  if (args.as_json) {
    json out = json::array();
    for (const auto& e : entries) {
      out.push_back({{"id", e.id},
                     {"n", e.n},
                     {"kind", e.is_set ? "set" : "function"},
                     {"rho", e.rho},
                     {"hessian_lipschitz", e.hessian_lipschitz},
                     {"exact", e.exact_available},
                     {"note", e.note}});
    }
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }
  std::printf("%-34s %2s  %-8s %8s %10s  %-5s %s\n", "id", "n", "kind", "rho",
              "hess-lip", "exact", "note");
  for (const auto& e : entries) {
    char rho[32], lip[32];
    std::snprintf(rho, sizeof(rho), "%g", e.rho);
    if (std::isnan(e.hessian_lipschitz)) {
      std::snprintf(lip, sizeof(lip), "-");
    } else {
      std::snprintf(lip, sizeof(lip), "%.6g", e.hessian_lipschitz);
    }
    std::printf("%-34s %2d  %-8s %8s %10s  %-5s %s\n", e.id.c_str(), e.n,
                e.is_set ? "set" : "function", rho, lip,
                e.exact_available ? "yes" : "no", e.note.c_str());
  }
  return 0;
}

struct EstimateArgs {
  std::string id;
  std::vector<double> x;
  std::optional<double> lambda;
  double delta = 0.01;
  std::string method = "mc";
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out_csv;
  bool as_json = false;
  std::string command_line;
};

int cmd_estimate(const EstimateArgs& args) {
  const ps::ProxInstance inst = configured_instance(args.id, args.x, args.lambda);
  const ps::Method method = ps::method_from_string(args.method);

  ps::RateSweep sweep;
  sweep.instance_id = inst.id;
  sweep.n = inst.dim();
  sweep.lambda = inst.lambda;
  sweep.mu = inst.mu();
  sweep.method = method;
  sweep.bound_kind = ps::default_bound_kind(inst);

  ps::SweepPoint pt;
  pt.delta = args.delta;
  pt.seed = args.seed;
  double log_normalizer = ps::kNaN;
  if (method == ps::Method::monte_carlo) {
    ps::EstimatorConfig config;
    config.delta = args.delta;
    config.samples = args.samples;
    config.seed = args.seed;
    const ps::Estimate est = inst.is_set ? ps::estimate_pdelta(inst, config)
                                         : ps::estimate_mdelta(inst, config);
    pt.estimate = est.point;
    pt.spread = est.stderr_.norm();
    pt.ess = est.ess;
    pt.acceptance = est.acceptance;
    log_normalizer = est.log_normalizer;
  } else {
    const ps::QuadratureResult res = inst.is_set
                                         ? ps::pdelta_quadrature(inst, args.delta)
                                         : ps::mdelta_quadrature(inst, args.delta);
    pt.estimate = res.point;
    pt.spread = res.error_estimate;
    log_normalizer = res.log_normalizer;
  }
  ps::Vec exact;
  if (inst.has_exact()) {
    exact = inst.exact(inst.x);
    pt.err = (pt.estimate - exact).norm();
  }
  pt.bound = ps::bound_value(inst, sweep.bound_kind, args.delta);
  sweep.points.push_back(pt);

  ps::RunManifest manifest;
  manifest.command_line = args.command_line;
  manifest.seed = args.seed;
  manifest.instance_ids = {inst.id};
  manifest.grid = "delta " + ps::format_csv_number(args.delta);
  if (!args.out_csv.empty()) manifest.outputs.push_back(args.out_csv);

  if (!args.out_csv.empty()) {
    ps::write_text_file(args.out_csv, ps::to_csv(sweep));
  }

  if (args.as_json) {
    json out{{"manifest", manifest_to_json(manifest)},
             {"instance", inst.id},
             {"n", sweep.n},
             {"lambda", sweep.lambda},
             {"mu", sweep.mu},
             {"method", ps::to_string(method)},
             {"delta", pt.delta},
             {"point", vec_to_json(pt.estimate)},
             {"err", pt.err},
             {"spread", pt.spread},
             {"bound", pt.bound},
             {"bound_kind", ps::to_string(sweep.bound_kind)},
             {"ess", pt.ess},
             {"acceptance", pt.acceptance},
             {"log_normalizer", log_normalizer}};
    if (inst.has_exact()) out["exact"] = vec_to_json(exact);
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }

  std::printf("%s\n", ps::to_text(manifest).c_str());
  std::printf("estimate:\n");
  std::printf("  instance: %s  (n %d, lambda %s, mu %s)\n", inst.id.c_str(),
              sweep.n, ps::format_csv_number(sweep.lambda).c_str(),
              ps::format_csv_number(sweep.mu).c_str());
  std::printf("  method: %s  delta: %s\n", ps::to_string(method),
              ps::format_csv_number(pt.delta).c_str());
  std::printf("  point: %s\n", vec_to_string(pt.estimate).c_str());
  if (inst.has_exact()) {
    std::printf("  exact: %s\n", vec_to_string(exact).c_str());
    std::printf("  err:   %s\n", ps::format_csv_number(pt.err).c_str());
  } else {
    std::printf("  exact: unavailable\n");
  }
  std::printf("  bound[%s]: %s\n", ps::to_string(sweep.bound_kind),
              ps::format_csv_number(pt.bound).c_str());
  std::printf("  %s: %s\n",
              method == ps::Method::monte_carlo ? "stderr (norm)"
                                                : "error estimate",
              ps::format_csv_number(pt.spread).c_str());
  if (method == ps::Method::monte_carlo) {
    std::printf("  ess: %s  acceptance: %s\n",
                ps::format_csv_number(pt.ess).c_str(),
                ps::format_csv_number(pt.acceptance).c_str());
  }
  std::printf("  log-normalizer: %s\n",
              ps::format_csv_number(log_normalizer).c_str());
  return 0;
}

struct SweepArgs {
  std::string id;
  std::vector<double> x;
  std::optional<double> lambda;
  double delta_max = 1e-1;
  double delta_min = 1e-4;
  int grid_points = 7;
  std::string method = "quadrature";
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out_csv;
  std::string out_svg;
  bool as_json = false;
  std::string command_line;
};

int cmd_sweep(const SweepArgs& args) {
  const ps::ProxInstance inst = configured_instance(args.id, args.x, args.lambda);
  ps::SweepConfig config;
  config.method = ps::method_from_string(args.method);
  config.samples = args.samples;
  config.seed = args.seed;
  config.jobs = args.jobs;
  const std::vector<double> grid =
      ps::geometric_grid(args.delta_max, args.delta_min, args.grid_points);
  const ps::RateSweep sweep = ps::run_sweep(inst, grid, config);

  int ok_points = 0;
  for (const auto& pt : sweep.points) {
    if (pt.status == "ok") ++ok_points;
  }

  std::optional<ps::RateFit> fit;
  std::string fit_note;
  if (ok_points >= 3) {
    try {
      fit = ps::fit_loglog(sweep);
    } catch (const ps::DegenerateFitError& err) {
      fit_note = err.what();
    }
  }

  ps::RunManifest manifest;
  manifest.command_line = args.command_line;
  manifest.seed = args.seed;
  manifest.instance_ids = {inst.id};
  {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "delta %s -> %s, %d points (geometric)",
                  ps::format_csv_number(args.delta_max).c_str(),
                  ps::format_csv_number(args.delta_min).c_str(),
                  args.grid_points);
    manifest.grid = buf;
  }
  if (!args.out_csv.empty()) manifest.outputs.push_back(args.out_csv);
  if (!args.out_svg.empty()) manifest.outputs.push_back(args.out_svg);

  if (!args.out_csv.empty()) ps::write_text_file(args.out_csv, ps::to_csv(sweep));
  if (!args.out_svg.empty()) {
    ps::write_text_file(args.out_svg, ps::to_svg(sweep, fit));
  }

  if (args.as_json) {
    json points = json::array();
    for (const auto& pt : sweep.points) {
      points.push_back({{"delta", pt.delta},
                        {"err", pt.err},
                        {"spread", pt.spread},
                        {"bound", pt.bound},
                        {"ess", pt.ess},
                        {"acceptance", pt.acceptance},
                        {"status", pt.status}});
    }
    json out{{"manifest", manifest_to_json(manifest)},
             {"instance", inst.id},
             {"n", sweep.n},
             {"lambda", sweep.lambda},
             {"mu", sweep.mu},
             {"method", ps::to_string(sweep.method)},
             {"bound_kind", ps::to_string(sweep.bound_kind)},
             {"ok_points", ok_points},
             {"points", points}};
    if (fit) {
      out["fit"] = {{"slope", fit->slope},
                    {"intercept", fit->intercept},
                    {"r_squared", fit->r_squared},
                    {"window", fit->window}};
    } else if (!fit_note.empty()) {
      out["fit_error"] = fit_note;
    }
    std::printf("%s\n", out.dump(2).c_str());
    return ok_points >= 3 ? 0 : 4;
  }

  std::printf("%s\n", ps::to_text(manifest).c_str());
  std::printf("sweep: %s  method %s  bound %s\n", inst.id.c_str(),
              ps::to_string(sweep.method), ps::to_string(sweep.bound_kind));
  std::printf("  %-12s %-14s %-14s %-14s %s\n", "delta", "err", "spread",
              "bound", "status");
  for (const auto& pt : sweep.points) {
    std::printf("  %-12.6g %-14.8g %-14.8g %-14.8g %s\n", pt.delta, pt.err,
                pt.spread, pt.bound, pt.status.c_str());
  }
  if (fit) {
    std::printf("fit: slope %.6g  intercept %.6g  R^2 %.8g  window [%d..%d]\n",
                fit->slope, fit->intercept, fit->r_squared, fit->window.front(),
                fit->window.back());
  } else if (!fit_note.empty()) {
    std::printf("fit: unavailable (%s)\n", fit_note.c_str());
  }
  if (ok_points < 3) {
    std::fprintf(stderr,
                 "sweep degenerate: only %d of %zu grid points succeeded\n",
                 ok_points, sweep.points.size());
    return 4;
  }
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int jobs = 1;
  bool as_json = false;
  std::string command_line;
};

int cmd_verify(const VerifyArgs& args) {
  const ps::VerifyReport report = ps::run_suite(args.suite, args.seed, args.jobs);

  ps::RunManifest manifest;
  manifest.command_line = args.command_line;
  manifest.seed = args.seed;
  manifest.instance_ids = {};
  manifest.grid = "suite " + args.suite;

  if (args.as_json) {
    json criteria = json::array();
    for (const auto& criterion : report.criteria) {
      json rows = json::array();
      for (const auto& row : criterion.rows) {
        rows.push_back({{"check", row.check},
                        {"observed", row.observed},
                        {"target", row.target},
                        {"margin", row.margin},
                        {"pass", row.pass}});
      }
      criteria.push_back({{"name", criterion.name},
                          {"pass", criterion.pass},
                          {"worst_margin", criterion.worst_margin},
                          {"rows", rows}});
    }
    json out{{"manifest", manifest_to_json(manifest)},
             {"suite", report.suite},
             {"seed", report.seed},
             {"pass", report.pass},
             {"criteria", criteria}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("%s\n", ps::to_text(manifest).c_str());
    std::printf("%s", ps::format_report(report).c_str());
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic proximal points and convex projections: "
               "barycentric estimators, rate sweeps, verification suites"};
  app.set_config("--config", "",
                 "key=value file mirroring the flag names ([subcommand] "
                 "sections); flags take precedence");
  app.require_subcommand(1);
  app.set_version_flag("--version", ps::kToolVersion);

  CatalogArgs cat_args;
  auto* cat = app.add_subcommand("catalog", "list the built-in problem instances");
  cat->fallthrough();
  cat->add_flag("--json", cat_args.as_json, "machine-readable listing");

  EstimateArgs est_args;
  double est_lambda = 0.0;
  auto* est = app.add_subcommand(
      "estimate", "one proximal-point / projection estimate at a single delta");
  est->fallthrough();
  est->add_option("id,--id", est_args.id, "catalog instance id")->required();
  est->add_option("--x", est_args.x,
                  "anchor override, comma separated (e.g. 0.3,-0.2)")
      ->delimiter(',');
  auto* est_lambda_opt =
      est->add_option("--lambda", est_lambda, "prox scale override (> 0)");
  est->add_option("--delta", est_args.delta, "smoothing parameter")
      ->capture_default_str();
  est->add_option("--method", est_args.method, "mc | quadrature")
      ->check(CLI::IsMember({"mc", "quadrature"}))
      ->capture_default_str();
  est->add_option("--samples", est_args.samples,
                  "MC sample count / acceptance target")
      ->capture_default_str();
  est->add_option("--seed", est_args.seed, "RNG seed")->capture_default_str();
  est->add_option("--out-csv", est_args.out_csv, "write a one-row CSV");
  est->add_flag("--json", est_args.as_json, "JSON output");

  SweepArgs sweep_args;
  double sweep_lambda = 0.0;
  auto* swp = app.add_subcommand(
      "sweep", "error vs delta over a geometric grid, with CSV/SVG artifacts");
  swp->fallthrough();
  swp->add_option("id,--id", sweep_args.id, "catalog instance id")->required();
  swp->add_option("--x", sweep_args.x,
                  "anchor override, comma separated (e.g. 0.3,-0.2)")
      ->delimiter(',');
  auto* sweep_lambda_opt =
      swp->add_option("--lambda", sweep_lambda, "prox scale override (> 0)");
  swp->add_option("--delta-max", sweep_args.delta_max, "largest delta")
      ->capture_default_str();
  swp->add_option("--delta-min", sweep_args.delta_min, "smallest delta")
      ->capture_default_str();
  swp->add_option("--grid-points", sweep_args.grid_points,
                  "geometric grid size (>= 2)")
      ->capture_default_str();
  swp->add_option("--method", sweep_args.method, "mc | quadrature")
      ->check(CLI::IsMember({"mc", "quadrature"}))
      ->capture_default_str();
  swp->add_option("--samples", sweep_args.samples,
                  "MC sample count / acceptance target per point")
      ->capture_default_str();
  swp->add_option("--seed", sweep_args.seed, "RNG seed")->capture_default_str();
  swp->add_option("--jobs", sweep_args.jobs,
                  "worker threads (never affects results)")
      ->capture_default_str();
  swp->add_option("--out-csv", sweep_args.out_csv, "CSV output path");
  swp->add_option("--out-svg", sweep_args.out_svg, "log-log SVG output path");
  swp->add_flag("--json", sweep_args.as_json, "JSON output");

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand(
      "verify", "run a verification suite and print the pass/fail table");
  ver->fallthrough();
  ver->add_option("suite,--suite", verify_args.suite,
                  "all | prox-sqrt | prox-linear | proj-sqrt | proj-linear | "
                  "examples | tail-bounds | properties")
      ->capture_default_str();
  ver->add_option("--seed", verify_args.seed, "RNG seed")->capture_default_str();
  ver->add_option("--jobs", verify_args.jobs,
                  "worker threads for sweeps inside criteria")
      ->capture_default_str();
  ver->add_flag("--json", verify_args.as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help / --version
    app.exit(err);
    return 2;
  }

  const std::string command_line = join_command_line(argc, argv);
  est_args.command_line = command_line;
  sweep_args.command_line = command_line;
  verify_args.command_line = command_line;
  if (est_lambda_opt->count() > 0) est_args.lambda = est_lambda;
  if (sweep_lambda_opt->count() > 0) sweep_args.lambda = sweep_lambda;

  try {
    if (cat->parsed()) return cmd_catalog(cat_args);
    if (est->parsed()) return cmd_estimate(est_args);
    if (swp->parsed()) return cmd_sweep(sweep_args);
    if (ver->parsed()) return cmd_verify(verify_args);
  } catch (const ps::ZeroMassError& err) {
    std::fprintf(stderr, "error (zero mass): %s\n", err.what());
    return 3;
  } catch (const ps::MassUnderflowError& err) {
    std::fprintf(stderr, "error (mass underflow): %s\n", err.what());
    return 3;
  } catch (const ps::DegenerateFitError& err) {
    std::fprintf(stderr, "error (degenerate sweep): %s\n", err.what());
    return 4;
  } catch (const ps::ParameterError& err) {
    std::fprintf(stderr, "error (parameters): %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 2;
}
