#include "newton2d/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "newton2d/extremal.hpp"
#include "newton2d/functional.hpp"
#include "newton2d/montecarlo.hpp"
#include "newton2d/oracle.hpp"
#include "newton2d/serialization.hpp"
#include "newton2d/svg.hpp"

namespace newton2d::cli {

namespace {

constexpr char kCsvHeader[] = "h_over_r,triangle_R,staircase_R,dp_R,status";

struct SolveArgs {
  double r = 0.0;
  double H = 0.0;
  std::string variant = "restricted";
  std::string out_path;
};

struct EvalArgs {
  std::string profile_path;
  int dim = 2;
};

struct VerifyArgs {
  double r = 0.0;
  double H = 0.0;
  std::string variant = "restricted";
  std::string oracle = "all";
  int cells = 200;
  int levels = 200;
  double slope_bound = 5.0;
  int trials = 64;
  double eps = 0.01;
  int mesh = 64;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 42;
};

struct SweepArgs {
  double r = 1.0;
  double h_min = 0.0;
  double h_max = 0.0;
  int steps = 0;
  int cells = 200;
  int levels = 200;
  std::string out_path;
};

struct SvgArgs {
  std::string profile_path;
  std::string out_path;
  int width = 800;
  int height = 600;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ProblemSpec make_spec(double r, double H, const std::string& variant) {
  try {
    return ProblemSpec::make(r, H, parse_variant(variant));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(std::ostream& out, const Json& doc) {
  write_json(out, doc);
  out << '\n';
}

Profile load_valid_profile(const std::string& path) {
  Profile p;
  try {
    p = read_profile_file(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto v = validate(p);
  if (!v.ok()) {
    std::string msg = "profile failed validation:";
    for (const auto& m : v.violations) msg += "\n  " + m;
    throw UsageError(msg);
  }
  return p;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const ProblemSpec spec = make_spec(a.r, a.H, a.variant);
  const SolutionReport rep = solve(spec);
  const Json doc = to_json(rep);
  emit(out, doc);
  if (!a.out_path.empty()) {
    std::ofstream f(a.out_path);
    if (!f) throw UsageError("cannot write " + a.out_path);
    emit(f, doc);
  }
  return rep.status == SolutionStatus::NoSolution ? kNoSolution : kOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.dim != 2 && a.dim != 3) throw UsageError("--dim must be 2 or 3");
  const Profile p = load_valid_profile(a.profile_path);
  Json doc;
  doc["resistance_2d"] = resistance_2d(p);
  if (a.dim == 3) doc["resistance_3d"] = resistance_3d(p);
  emit(out, doc);
  return kOk;
}

VerificationClaim claim_abs(std::string name, double expected, double observed,
                            double tol) {
  return {std::move(name), expected, observed, tol,
          std::abs(observed - expected) <= tol};
}

void verify_dp(const ProblemSpec& spec, const SolutionReport& sol,
               const VerifyArgs& a, std::vector<VerificationClaim>& claims) {
  const double tri = triangle_resistance(spec.r, spec.H);
  if (spec.variant == Variant::Restricted) {
    const DpResult dp = dp_min_resistance(spec, {a.cells, a.levels, 0.0});
    const double closed = *sol.minimal_resistance;
    claims.push_back(claim_abs("dp_minimum_matches_closed_form", closed,
                               dp.value, 0.01));
    // Grid profiles are admissible, so none may beat the minimizer.
    claims.push_back({"dp_not_below_closed_form", closed, dp.value, 1e-12,
                      dp.value >= closed - 1e-12});
    return;
  }
  const double B = a.slope_bound;
  const DpResult dp = dp_min_resistance(spec, {a.cells, a.levels, B});
  claims.push_back(claim_abs("bounded_dp_matches_bang_bang",
                             spec.r / (1.0 + B * B), dp.value, 0.01));
  claims.push_back({"bounded_dp_below_triangle", tri, dp.value, 0.0,
                    dp.value < tri});
}

void verify_perturb(const ProblemSpec& spec, const SolutionReport& sol,
                    const VerifyArgs& a,
                    std::vector<VerificationClaim>& claims) {
  const PerturbationConfig cfg{a.eps, a.trials, a.seed, a.mesh, 1};
  std::vector<Profile> targets = sol.representatives;
  if (targets.empty()) targets.push_back(make_triangle(spec));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    const PerturbationReport rep = second_variation_test(targets[i], spec, cfg);
    if (sol.status == SolutionStatus::NoSolution) {
      claims.push_back({"triangle_admits_descent" + tag, 0.0, rep.min_delta,
                        0.0, rep.min_delta < 0.0});
    } else {
      claims.push_back({"representative_is_local_minimum" + tag, 0.0,
                        rep.min_delta, 0.0, rep.min_delta > 0.0});
    }
    if (rep.expected_ratio) {
      const double e = *rep.expected_ratio;
      // Relative 5%, absolute near the inflection where f'' vanishes.
      const double tol = std::max(0.05 * std::abs(e), std::abs(e) < 0.05 ? 0.05 : 0.0);
      claims.push_back(claim_abs("second_variation_ratio" + tag, e, rep.ratio, tol));
    }
  }
}

void verify_mc(const ProblemSpec& spec, const SolutionReport& sol,
               const VerifyArgs& a, std::vector<VerificationClaim>& claims) {
  std::vector<Profile> targets = sol.representatives;
  if (targets.empty()) targets.push_back(make_triangle(spec));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    const double exact = resistance_2d(targets[i]);
    const McEstimate est = estimate_resistance(targets[i], a.samples, a.seed);
    // Constant integrands give std_error 0; allow rounding in the mean.
    const double tol = std::max(3.0 * est.std_error, 1e-12 * std::abs(exact));
    claims.push_back(claim_abs("mc_within_3_sigma" + tag, exact, est.estimate, tol));
    claims.push_back(claim_abs("mc_relative_error" + tag, exact, est.estimate,
                               0.01 * std::abs(exact)));
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const ProblemSpec spec = make_spec(a.r, a.H, a.variant);
  const std::string& o = a.oracle;
  if (o != "dp" && o != "perturb" && o != "mc" && o != "all")
    throw UsageError("--oracle must be dp|perturb|mc|all");
  if (a.cells < 2 || a.levels < 2 || a.trials < 1 || !(a.eps > 0.0) ||
      a.samples < 1 || a.mesh < 2 || !(a.slope_bound > 0.0))
    throw UsageError("grid, trial, epsilon, sample and slope-bound flags must be positive");

  const SolutionReport sol = solve(spec);
  std::vector<VerificationClaim> claims;
  try {
    if (o == "dp" || o == "all") verify_dp(spec, sol, a, claims);
    if (o == "perturb" || o == "all") verify_perturb(spec, sol, a, claims);
    if (o == "mc" || o == "all") verify_mc(spec, sol, a, claims);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  bool all = true;
  Json list = Json::array();
  for (const auto& c : claims) {
    all = all && c.pass;
    list.push_back(to_json(c));
  }
  Json doc;
  doc["r"] = spec.r;
  doc["H"] = spec.H;
  doc["variant"] = std::string(to_string(spec.variant));
  doc["status"] = std::string(to_string(sol.status));
  doc["oracle"] = o;
  doc["claims"] = std::move(list);
  doc["pass"] = all;
  emit(out, doc);
  return all ? kOk : kVerificationFailed;
}

struct SweepRow {
  double h;
  std::string marker;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (!(a.r > 0.0) || !(a.h_min > 0.0) || !(a.h_max > a.h_min) || a.steps < 2)
    throw UsageError(
        "sweep needs r > 0, 0 < H-min < H-max and steps >= 2");
  if (a.cells < 2 || a.levels < 2)
    throw UsageError("--cells and --levels must be >= 2");

  std::vector<SweepRow> rows;
  for (int i = 0; i < a.steps; ++i)
    rows.push_back({a.h_min + (a.h_max - a.h_min) * i / (a.steps - 1), ""});
  const std::pair<double, const char*> markers[] = {
      {kInflectionSlope * a.r, "unrestricted_threshold"},
      {a.r, "restricted_crossover"}};
  for (const auto& [h, name] : markers) {
    if (h < a.h_min || h > a.h_max) continue;
    bool merged = false;
    for (auto& row : rows) {
      if (std::abs(row.h - h) <= 1e-9 * a.r) {
        row = {h, name};
        merged = true;
      }
    }
    if (!merged) rows.push_back({h, name});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& x, const SweepRow& y) { return x.h < y.h; });

  std::ofstream f(a.out_path);
  if (!f) throw UsageError("cannot write " + a.out_path);
  f << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const ProblemSpec rs = ProblemSpec::make(a.r, row.h, Variant::Restricted);
    const ProblemSpec us = ProblemSpec::make(a.r, row.h, Variant::Unrestricted);
    const double tri = resistance_2d(make_triangle(rs));
    std::string stair;
    if (row.h <= a.r)
      stair = g17(staircase_resistance(
          StaircaseParams{1, {0.0, a.r - row.h, a.r, a.r}, {0.0, row.h}}, rs));
    const double dp = dp_min_resistance(rs, {a.cells, a.levels, 0.0}).value;
    std::string status = "restricted=" + std::string(to_string(solve(rs).status)) +
                         ";unrestricted=" + std::string(to_string(solve(us).status));
    if (!row.marker.empty()) status += ";marker=" + row.marker;
    f << g17(row.h / a.r) << ',' << g17(tri) << ',' << stair << ',' << g17(dp)
      << ',' << status << '\n';
  }
  if (!f) throw UsageError("failed writing " + a.out_path);

  Json doc;
  doc["out"] = a.out_path;
  doc["rows"] = rows.size();
  emit(out, doc);
  return kOk;
}

int cmd_export_svg(const SvgArgs& a, std::ostream& out) {
  const Profile p = load_valid_profile(a.profile_path);
  std::string svg;
  try {
    svg = render_profile_svg(p, a.width, a.height);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream f(a.out_path);
  if (!f || !(f << svg)) throw UsageError("cannot write " + a.out_path);
  Json doc;
  doc["out"] = a.out_path;
  emit(out, doc);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Two-dimensional minimal-resistance bodies: solve, evaluate, verify"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "closed-form minimizer (JSON report)");
  solve_cmd->add_option("--r", sa.r, "base half-width r > 0")->required();
  solve_cmd->add_option("--H", sa.H, "height H > 0")->required();
  solve_cmd->add_option("--variant", sa.variant, "restricted|unrestricted");
  solve_cmd->add_option("--out", sa.out_path, "also write the report here");

  EvalArgs ea;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate resistance of a profile JSON");
  eval_cmd->add_option("--profile", ea.profile_path, "profile JSON path")->required();
  eval_cmd->add_option("--dim", ea.dim, "2 or 3 (3 adds the axisymmetric functional)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "check the closed form against numerical oracles");
  verify_cmd->add_option("--r", va.r, "base half-width r > 0")->required();
  verify_cmd->add_option("--H", va.H, "height H > 0")->required();
  verify_cmd->add_option("--variant", va.variant, "restricted|unrestricted");
  verify_cmd->add_option("--oracle", va.oracle, "dp|perturb|mc|all");
  verify_cmd->add_option("--cells", va.cells, "DP x-cells");
  verify_cmd->add_option("--levels", va.levels, "DP height levels");
  verify_cmd->add_option("--slope-bound", va.slope_bound, "DP slope bound for the unrestricted variant");
  verify_cmd->add_option("--trials", va.trials, "perturbation trials");
  verify_cmd->add_option("--eps", va.eps, "perturbation scale");
  verify_cmd->add_option("--mesh", va.mesh, "perturbation mesh size");
  verify_cmd->add_option("--samples", va.samples, "Monte Carlo samples");
  verify_cmd->add_option("--seed", va.seed, "RNG seed");

  SweepArgs wa;
  auto* sweep_cmd = app.add_subcommand(
      "sweep",
      "tabulate resistances over H/r. CSV columns: h_over_r, triangle_R "
      "(constant slope H/r), staircase_R (slope-{0,1} family, empty when H > r), "
      "dp_R (restricted grid DP), status (solver statuses; threshold rows carry "
      "a marker)");
  sweep_cmd->add_option("--r", wa.r, "base half-width r > 0");
  sweep_cmd->add_option("--H-min", wa.h_min, "smallest H")->required();
  sweep_cmd->add_option("--H-max", wa.h_max, "largest H")->required();
  sweep_cmd->add_option("--steps", wa.steps, "number of grid rows (>= 2)")->required();
  sweep_cmd->add_option("--cells", wa.cells, "DP x-cells");
  sweep_cmd->add_option("--levels", wa.levels, "DP height levels");
  sweep_cmd->add_option("--out", wa.out_path, "CSV output path")->required();

  SvgArgs ga;
  auto* svg_cmd = app.add_subcommand("export-svg", "draw a profile JSON as SVG");
  svg_cmd->add_option("--profile", ga.profile_path, "profile JSON path")->required();
  svg_cmd->add_option("--out", ga.out_path, "SVG output path")->required();
  svg_cmd->add_option("--width", ga.width, "canvas width");
  svg_cmd->add_option("--height", ga.height, "canvas height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa, out);
    if (*eval_cmd) return cmd_eval(ea, out);
    if (*verify_cmd) return cmd_verify(va, out);
    if (*sweep_cmd) return cmd_sweep(wa, out);
    if (*svg_cmd) return cmd_export_svg(ga, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace newton2d::cli
