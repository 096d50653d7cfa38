#pragma once

// Maximum-principle analysis. With the cost multiplier normalized to -1 and
// the constant adjoint written as -lambda (lambda > 0), the pointwise
// Hamiltonian is
//
//     H(u) = -1/(1+u^2) - lambda*u,
//
// and an admissible control is an extremal iff every slope it uses
// maximizes H over the control set. Extremals are absolute minimizers, so
// the whole problem reduces to the one-dimensional maximization of H.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newton2d/geometry.hpp"

namespace newton2d {

/// Slope where H'' changes sign, 1/sqrt(3).
inline const double kInflectionSlope = 1.0 / std::sqrt(3.0);
/// Largest multiplier with a stationary slope, 3 sqrt(3) / 8.
inline const double kLambdaThreshold = 3.0 * std::sqrt(3.0) / 8.0;
/// Slopes this close to kInflectionSlope classify as Inflection.
inline constexpr double kInflectionTolerance = 1e-9;

enum class StationaryKind { LocalMax, LocalMin, Inflection };
std::string_view to_string(StationaryKind k);

struct StationarySlope {
  double slope;
  StationaryKind kind;
};

struct ExtremalCertificate {
  double psi0 = -1.0;
  double lambda = 0.0;  // adjoint is identically -lambda
  std::vector<StationarySlope> stationary;
};

enum class SolutionStatus {
  UniqueMinimizer,
  InfiniteFamily,
  LocalMinimizerOnly,
  NoSolution
};
std::string_view to_string(SolutionStatus s);

struct SolutionReport {
  Variant variant = Variant::Restricted;
  SolutionStatus status = SolutionStatus::NoSolution;
  std::optional<double> minimal_resistance;
  std::vector<Profile> representatives;
  std::optional<ExtremalCertificate> certificate;
  std::vector<std::string> notes;
};

double hamiltonian(double u, double lambda);

struct HamiltonianDerivatives {
  double first;
  double second;
  double third;
};
HamiltonianDerivatives hamiltonian_derivatives(double u, double lambda);

/// Nonnegative slopes with 2u/(1+u^2)^2 = lambda, ascending. Empty above
/// kLambdaThreshold, the double root kInflectionSlope at it, two simple
/// roots below it. Throws std::invalid_argument for lambda <= 0.
std::vector<double> stationary_slopes(double lambda);

/// 2s/(1+s^2)^2; throws std::invalid_argument for s <= 0.
double lambda_for_slope(double s);

/// Higher-order derivative test. `derivatives` holds f''(a), f'''(a), ...
/// at a point where f'(a) = 0; the first entry with |value| > zero_tol
/// decides: even order gives an extremum (max if negative), odd order none.
/// Throws std::domain_error if every entry is within zero_tol.
StationaryKind classify_by_derivative_order(std::span<const double> derivatives,
                                            double zero_tol);

/// Classifies a stationary slope of H. H'' is treated as zero within
/// kInflectionTolerance of kInflectionSlope.
StationaryKind classify_stationary(double u);

struct CertificateConfig {
  double tolerance = 1e-9;
  std::size_t grid_points = 100000;
  /// Restricted scan covers [0, bound]; 0 selects max(10, 10 H/r).
  double bound = 0.0;
  /// Unrestricted check scans [u - radius, u + radius] around each slope.
  double local_radius = 1e-2;
  std::size_t local_points = 2001;
  unsigned workers = 1;
};

struct CertificateReport {
  bool pass = false;
  std::string mode;  // "global-grid" or "local"
  double lambda = 0.0;
  double scan_lo = 0.0;
  double scan_hi = 0.0;
  std::size_t grid_points = 0;
  double worst_violation = 0.0;  // max over segments of (best H) - H(u_i)
  std::size_t worst_segment = 0;
  double best_slope = 0.0;   // grid argmax for the worst segment's scan
  double best_value = 0.0;
  std::vector<std::string> notes;
};

/// Maximality check of every segment slope. Restricted: H(u_i) must reach
/// the grid maximum of H over [0, B] within tolerance. Unrestricted: H is
/// unbounded above as u -> -infinity, so no global maximizer exists and the
/// check is local (window scan around each slope). Never throws.
CertificateReport check_certificate(const Profile& profile,
                                    const ProblemSpec& spec, double lambda,
                                    const CertificateConfig& config = {});

/// Closed-form solution for both variants (dimension Two only; throws
/// std::invalid_argument for Three).
SolutionReport solve(const ProblemSpec& spec);

/// `count` seeded members of the slope-{0,1} minimizing family with n rises.
/// Throws std::invalid_argument unless Restricted, H <= r, n >= 1, count >= 1.
std::vector<StaircaseParams> enumerate_minimizers(const ProblemSpec& spec,
                                                  int n, int count,
                                                  std::uint64_t rng_seed);

/// Free coordinates of a staircase: xi_1..xi_2n then mu_1..mu_{n-1}
/// (endpoints are fixed by the boundary conditions).
std::vector<double> staircase_free_coordinates(const StaircaseParams& params);
StaircaseParams staircase_from_free(std::span<const double> free, int n,
                                    const ProblemSpec& spec);

/// Analytic gradient of the staircase resistance in free coordinates.
std::vector<double> staircase_gradient(const StaircaseParams& params,
                                       const ProblemSpec& spec);

struct StationarityReport {
  std::vector<double> analytic;
  std::vector<double> finite_difference;
  double analytic_norm = 0.0;
  double finite_difference_norm = 0.0;
  double max_abs_difference = 0.0;
};

/// Analytic versus central-difference gradient. Requires strictly
/// increasing xi and mu (interior point); throws std::invalid_argument
/// otherwise.
StationarityReport staircase_gradient_check(const StaircaseParams& params,
                                            const ProblemSpec& spec,
                                            double fd_step = 1e-6);

}  // namespace newton2d
