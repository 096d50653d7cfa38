// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "newton2d/cli.hpp"
#include "newton2d/extremal.hpp"
#include "newton2d/functional.hpp"
#include "newton2d/montecarlo.hpp"
#include "newton2d/oracle.hpp"
#include "newton2d/serialization.hpp"

using namespace newton2d;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

ProblemSpec restricted(double r, double H) {
  return ProblemSpec::make(r, H, Variant::Restricted);
}
ProblemSpec unrestricted(double r, double H) {
  return ProblemSpec::make(r, H, Variant::Unrestricted);
}

Check golden_values() {
  Check c;
  for (auto [r, H, want] : {std::tuple{1.0, 1.0, 0.5}, {1.0, 2.0, 0.2}, {2.0, 1.0, 1.6}}) {
    const double got = resistance_2d(make_triangle(restricted(r, H)));
    c.expect(rel_close(got, want, 1e-12), fmt("triangle(%g,%g)=%.17g", r, H, got));
  }
  for (auto [r, H] : {std::pair{1.0, 0.4}, {1.0, 0.5}}) {
    const double want = r - H / 2.0;
    const double io = staircase_resistance({1, {0.0, r - H, r, r}, {0.0, H}}, restricted(r, H));
    const double fo = staircase_resistance({1, {0.0, 0.0, H, r}, {0.0, H}}, restricted(r, H));
    c.expect(rel_close(io, want, 1e-12) && rel_close(fo, want, 1e-12),
             fmt("staircase(%g,%g)=%.17g", r, H, io));
  }
  for (auto [a, want] : {std::pair{3.0, 0.1}, {10.0, 1.0 / 101.0}}) {
    const double got = resistance_2d(make_counterexample(unrestricted(1.0, 1.0), {a}));
    c.expect(rel_close(got, want, 1e-12), fmt("wedge a=%g: %.17g", a, got));
  }
  if (c.ok) c.detail = "triangle x3, staircase x2, wedge x2 within 1e-12 rel";
  return c;
}

Check family_invariance() {
  Check c;
  std::mt19937_64 g(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int members = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.5 + 2.0 * U(g);
    const double H = r * (0.05 + 0.95 * U(g));
    const auto spec = restricted(r, H);
    const int n = 1 + i % 5;
    const auto m = enumerate_minimizers(spec, n, 1, 7000 + i)[0];
    const double R = staircase_resistance(m, spec);
    const double want = r - H / 2.0;
    worst = std::max(worst, std::abs(R - want) / want);
    c.expect(rel_close(R, want, 1e-12), fmt("member %g: R=%.17g want %.17g", i, R, want));
    const auto cert = check_certificate(make_staircase(spec, m), spec, 0.5);
    c.expect(cert.pass, fmt("member %g certificate violation %.3g", i, cert.worst_violation));
    ++members;
  }
  if (c.ok)
    c.detail = fmt("%g members, worst rel err %.3g, all certificates pass", members, worst);
  return c;
}

Check dp_equivalence() {
  Check c;
  std::string values;
  for (auto [r, H, want] : {std::tuple{1.0, 0.4, 0.8}, {1.0, 2.0, 0.2}}) {
    const double e200 = std::abs(dp_min_resistance(restricted(r, H), {200, 200, 0.0}).value - want);
    const double e400 = std::abs(dp_min_resistance(restricted(r, H), {400, 400, 0.0}).value - want);
    c.expect(e200 <= 0.01, fmt("(%g,%g) error at 200 = %.3g", r, H, e200));
    c.expect(e400 < e200, fmt("(%g,%g) error at 400 not below error at 200", r, H));
    values += fmt(" (%g,%g)", r, H) + fmt(" err200=%.17g err400=%.17g", e200, e400);
  }
  c.detail += (c.detail.empty() ? "" : ";") + values;
  return c;
}

Check threshold_behavior() {
  Check c;
  c.expect(stationary_slopes(0.66).empty(), "slopes not empty at 0.66");
  const auto at = stationary_slopes(3.0 * std::sqrt(3.0) / 8.0);
  c.expect(at.size() == 1 && std::abs(at[0] - std::sqrt(3.0) / 3.0) <= 1e-9,
           "threshold root not sqrt(3)/3");
  const auto half = stationary_slopes(0.5);
  bool has_one = false, has_low = false;
  for (double u : half) {
    if (std::abs(u - 1.0) < 1e-6)
      has_one = std::abs(hamiltonian_derivatives(u, 0.5).first) <= 1e-12;
    if (u > 0.29 && u < 0.30) has_low = true;
  }
  c.expect(has_one, "u=1 missing or residual > 1e-12 at lambda=0.5");
  c.expect(has_low, "no low root in (0.29, 0.30)");
  c.expect(classify_stationary(1.0) == StationaryKind::LocalMax, "u=1 not LocalMax");
  c.expect(classify_stationary(0.3) == StationaryKind::LocalMin, "u=0.3 not LocalMin");
  c.expect(classify_stationary(std::sqrt(3.0) / 3.0) == StationaryKind::Inflection,
           "u=sqrt(3)/3 not Inflection");
  const double h3 = hamiltonian_derivatives(std::sqrt(3.0) / 3.0, 0.5).third;
  c.expect(std::abs(h3 + 27.0 * std::sqrt(3.0) / 16.0) <= 1e-12, fmt("H'''=%.17g", h3));
  if (c.ok) c.detail = fmt("low root %.15g, H'''(1/sqrt3)=%.15g", half[0], h3);
  return c;
}

Check second_variation() {
  Check c;
  PerturbationConfig cfg;
  cfg.epsilon = 0.005;
  cfg.trials = 64;
  std::string summary;
  for (double s : {0.3, 1.0, 2.0}) {
    const auto spec = unrestricted(1.0, s);
    const auto rep = second_variation_test(make_triangle(spec), spec, cfg);
    const double want = integrand_second_derivative(s);
    c.expect(std::abs(rep.ratio - want) <= 0.05 * std::abs(want),
             fmt("s=%g ratio %.6g vs f''=%.6g", s, rep.ratio, want));
    const bool sign_ok = s < 0.5 ? rep.min_delta < 0.0 : rep.min_delta > 0.0;
    c.expect(sign_ok, fmt("s=%g min dR=%.3g has wrong sign", s, rep.min_delta));
    summary += fmt(" s=%g ratio/f''=%.4f min dR=%.3g", s, rep.ratio / want, rep.min_delta);
  }
  if (c.ok) c.detail = summary.substr(1);
  return c;
}

Check no_global_minimum() {
  Check c;
  const auto spec = unrestricted(1.0, 1.0);
  double prev = INFINITY;
  std::string summary;
  for (double B : {2.0, 5.0, 10.0}) {
    const double v = dp_min_resistance(spec, {400, 400, B}).value;
    const double want = 1.0 / (1.0 + B * B);
    c.expect(std::abs(v - want) <= 0.01, fmt("B=%g dp=%.6g vs %.6g", B, v, want));
    c.expect(v < prev, fmt("B=%g not strictly below previous bound", B));
    prev = v;
    summary += fmt(" B=%g:%.6g", B, v);
  }
  if (c.ok) c.detail = "dp" + summary;
  return c;
}

Check difference_identity() {
  Check c;
  std::mt19937_64 g(77);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto spec = restricted(0.1 + 4.0 * U(g), 0.1 + 4.0 * U(g));
    const auto d = resistance_difference(spec.r * U(g), spec);
    worst = std::max(worst, std::abs(d.direct - d.closed_form));
  }
  c.expect(worst <= 1e-12, fmt("corrected form max deviation %.3g", worst));
  const auto spec = restricted(1.0, 1.0);
  const double direct = resistance_difference(0.8, spec).direct;
  const double printed = resistance_difference_as_printed(0.8, spec);
  c.expect(std::abs(printed - direct) > 0.25,
           fmt("printed %.6g vs direct %.6g not separated", printed, direct));
  if (c.ok)
    c.detail = fmt("corrected max dev %.3g; printed %.6g vs direct %.6g at (1,1,0.8)",
                   worst, printed, direct);
  return c;
}

Check monte_carlo() {
  Check c;
  const auto spec = restricted(1.0, 0.4);
  const auto io = make_staircase(spec, {1, {0.0, 0.6, 1.0, 1.0}, {0.0, 0.4}});
  const auto est = estimate_resistance(io, 1000000, 42);
  const double err = std::abs(est.estimate - 0.8);
  c.expect(err <= 3.0 * est.std_error,
           fmt("|est-0.8|=%.3g > 3 sigma (%.3g)", err, 3.0 * est.std_error));
  c.expect(err / 0.8 <= 0.01, fmt("relative error %.3g", err / 0.8));

  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> A(0.0, 2.0 * M_PI);
  std::normal_distribution<double> S(0.0, 4.0);
  double norm_worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double a = A(g);
    const Vec2 v = reflect({std::cos(a), std::sin(a)}, S(g));
    norm_worst = std::max(norm_worst, std::abs(std::hypot(v.x, v.y) - 1.0));
  }
  c.expect(norm_worst <= 1e-14, fmt("norm drift %.3g", norm_worst));
  double imp_worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double u = S(g);
    const Vec2 v = reflect({0.0, -1.0}, u);
    imp_worst = std::max(imp_worst, std::abs((v.y + 1.0) - 2.0 / (1.0 + u * u)));
  }
  c.expect(imp_worst <= 1e-14, fmt("impulse deviation %.3g", imp_worst));
  if (c.ok)
    c.detail = fmt("est=%.9g sigma=%.3g", est.estimate, est.std_error) +
               fmt(" norm dev %.3g, impulse dev %.3g", norm_worst, imp_worst);
  return c;
}

Check gradient_stationarity() {
  Check c;
  double worst_a = 0.0, worst_fd = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (auto [r, H] : {std::pair{1.0, 0.4}, {2.0, 0.5}}) {
      const auto spec = restricted(r, H);
      for (const auto& m : enumerate_minimizers(spec, n, 5, 300 + n)) {
        const auto rep = staircase_gradient_check(m, spec, 1e-7);
        worst_a = std::max(worst_a, rep.analytic_norm);
        worst_fd = std::max(worst_fd, rep.finite_difference_norm);
      }
    }
  }
  c.expect(worst_a <= 1e-8, fmt("analytic norm %.3g", worst_a));
  c.expect(worst_fd <= 1e-6, fmt("finite-difference norm %.3g", worst_fd));
  double worst_d = 0.0;
  for (auto [r, H] : {std::pair{1.0, 0.4}, {1.0, 0.5}, {3.0, 1.2}})
    worst_d = std::max(worst_d,
                       std::abs(branch_resistance_final_flat_derivative(H, restricted(r, H))));
  c.expect(worst_d <= 1e-8, fmt("branch derivative at xi=H: %.3g", worst_d));
  if (c.ok)
    c.detail = fmt("analytic %.3g, fd %.3g, dR/dxi(H) %.3g", worst_a, worst_fd, worst_d);
  return c;
}

int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "newton2d");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  return code;
}

Check cli_contract() {
  Check c;
  std::string out;
  struct Case {
    std::vector<std::string> args;
    const char* status;
    int code;
  };
  const Case cases[] = {
      {{"solve", "--r", "1", "--H", "2", "--variant", "restricted"}, "UniqueMinimizer", 0},
      {{"solve", "--r", "1", "--H", "0.4", "--variant", "restricted"}, "InfiniteFamily", 0},
      {{"solve", "--r", "1", "--H", "0.5", "--variant", "unrestricted"}, "NoSolution", 2},
  };
  for (const auto& k : cases) {
    const int code = run_cli(k.args, out);
    const auto doc = Json::parse(out, nullptr, false);
    const bool ok = code == k.code && !doc.is_discarded() && doc["status"] == k.status;
    c.expect(ok, std::string("solve ") + k.args[4] + " " + k.args[6] + " gave exit " +
                     std::to_string(code));
  }

  const auto csv = std::filesystem::temp_directory_path() / "n2d_acceptance_sweep.csv";
  const int code = run_cli({"sweep", "--r", "1", "--H-min", "0.1", "--H-max", "2.0",
                            "--steps", "20", "--out", csv.string()},
                           out);
  c.expect(code == 0, "sweep exit " + std::to_string(code));
  std::ifstream in(csv);
  std::string line, crossover;
  while (std::getline(in, line))
    if (line.rfind("1,", 0) == 0) crossover = line;
  std::filesystem::remove(csv);
  c.expect(crossover.rfind("1,0.5,0.5,", 0) == 0, "crossover row '" + crossover + "'");
  if (c.ok) c.detail = "solve statuses/exit codes ok; crossover row " + crossover;
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"golden values", golden_values},
      {"family invariance", family_invariance},
      {"DP-oracle equivalence", dp_equivalence},
      {"threshold behavior", threshold_behavior},
      {"second-variation ratios", second_variation},
      {"no global minimum (bounded DP)", no_global_minimum},
      {"difference-identity audit", difference_identity},
      {"Monte Carlo consistency", monte_carlo},
      {"gradient stationarity", gradient_stationarity},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    if (!c.ok) ++failed;
    std::printf("%s criterion %2d: %s -- %s\n", c.ok ? "PASS" : "FAIL", index, name,
                c.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
