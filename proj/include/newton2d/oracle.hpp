#pragma once

// Independent numerical checks of the closed-form results: grid dynamic
// programming over discretized profiles, random second-variation probes,
// and central finite differences.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newton2d/geometry.hpp"

namespace newton2d {

struct DpConfig {
  int n_cells = 200;
  int n_levels = 200;
  /// Max |slope|. 0 means unbounded (Restricted only).
  double slope_bound = 0.0;
};

struct DpResult {
  double value = 0.0;
  Profile profile;
  std::vector<int> cell_rises;  // level change per cell
  double dx = 0.0;
  double dh = 0.0;
  double cell_slope(std::size_t i) const { return cell_rises[i] * dh / dx; }
};

/// Exact minimum of sum dx^3/(dx^2 + (k dh)^2) over level paths from 0 to
/// n_levels in n_cells steps, with dx = r/N and dh = H/M. Restricted allows
/// k in [0, K], Unrestricted k in [-K, K], where K comes from the slope
/// bound. Ties go to the smallest k. Throws std::invalid_argument on a bad
/// config or when the end level is unreachable.
DpResult dp_min_resistance(const ProblemSpec& spec, const DpConfig& config);

struct PerturbationConfig {
  double epsilon = 0.01;
  int trials = 64;
  std::uint64_t rng_seed = 42;
  int mesh = 64;
  unsigned workers = 1;
};

struct PerturbationReport {
  int trials = 0;
  double epsilon = 0.0;
  double min_delta = 0.0;
  double max_delta = 0.0;
  int negative_trials = 0;
  /// sum(dR) / sum((eps^2/2) * integral(phi^2)) over all trials.
  double ratio = 0.0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  /// f''(s) for a constant-slope profile, where f(u) = 1/(1+u^2).
  std::optional<double> expected_ratio;
};

/// (6s^2 - 2) / (1+s^2)^3.
double integrand_second_derivative(double s);

/// Random zero-mean piecewise-constant slope perturbations u -> u + eps*phi,
/// |phi| <= 1, which keep y(0) = 0 and y(r) = H. For Restricted specs phi is
/// clipped so that slopes stay nonnegative.
PerturbationReport second_variation_test(const Profile& profile,
                                         const ProblemSpec& spec,
                                         const PerturbationConfig& config);

using ScalarField = std::function<double(std::span<const double>)>;

/// Central differences with step `step` per coordinate. Throws
/// std::domain_error if the evaluator throws or returns a non-finite value.
std::vector<double> finite_difference_gradient(const ScalarField& evaluator,
                                               std::span<const double> point,
                                               double step);

/// One verified statement.
struct VerificationClaim {
  std::string claim;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

}  // namespace newton2d
