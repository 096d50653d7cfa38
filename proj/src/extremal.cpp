#include "newton2d/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "newton2d/functional.hpp"
#include "newton2d/kernels.hpp"
#include "newton2d/oracle.hpp"
#include "newton2d/rng.hpp"

namespace newton2d {

using kernels::GridMax;

namespace {

// Multipliers within this relative distance of kLambdaThreshold are the
// double-root case; the residual there is O(distance) since g' vanishes.
constexpr double kThresholdRelTol = 1e-14;

// u / (1+u^2)^2, half the left side of the first-order condition.
double half_gain(double u) {
  const double q = 1.0 + u * u;
  return u / (q * q);
}

// Root of half_gain(u) = target on [lo, hi], where half_gain is monotone
// with the given direction. Bisects to adjacent doubles.
double bisect_branch(double target, double lo, double hi, bool increasing) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const bool below = half_gain(mid) < target;
    if (below == increasing)
      lo = mid;
    else
      hi = mid;
  }
  const double elo = std::abs(half_gain(lo) - target);
  const double ehi = std::abs(half_gain(hi) - target);
  return elo <= ehi ? lo : hi;
}

GridMax scan_max(double lambda, double u0, double du, std::size_t points,
                 unsigned workers) {
  const auto& k = kernels::active();
  workers = std::max(1u, std::min<unsigned>(workers, 64));
  if (workers == 1 || points < 4096)
    return k.hamiltonian_grid_max(lambda, u0, du, 0, points);

  std::vector<GridMax> parts(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (points + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(points, w * chunk);
    const std::size_t e = std::min(points, b + chunk);
    pool.emplace_back([&, w, b, e] {
      parts[w] = b < e ? k.hamiltonian_grid_max(lambda, u0, du, b, e)
                       : GridMax{-INFINITY, b};
    });
  }
  for (auto& t : pool) t.join();
  GridMax best{-INFINITY, 0};
  for (const auto& p : parts)
    if (p.value > best.value ||
        (p.value == best.value && p.index < best.index))
      best = p;
  return best;
}

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be positive and finite");
}

ExtremalCertificate make_certificate(double lambda) {
  ExtremalCertificate c;
  c.lambda = lambda;
  for (double u : stationary_slopes(lambda))
    c.stationary.push_back({u, classify_stationary(u)});
  return c;
}

StaircaseParams staircase_n(const ProblemSpec& spec, std::vector<double> flats,
                            std::vector<double> rises) {
  const int n = static_cast<int>(rises.size());
  StaircaseParams p;
  p.n = n;
  p.xi.assign(2 * n + 2, 0.0);
  p.mu.assign(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    p.xi[2 * i + 1] = std::min(spec.r, p.xi[2 * i] + flats[i]);
    if (i < n) {
      p.xi[2 * i + 2] = std::min(spec.r, p.xi[2 * i + 1] + rises[i]);
      p.mu[i + 1] = std::min(spec.H, p.mu[i] + rises[i]);
    }
  }
  p.xi.back() = spec.r;
  p.mu.back() = spec.H;
  return p;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::string_view to_string(StationaryKind k) {
  switch (k) {
    case StationaryKind::LocalMax: return "LocalMax";
    case StationaryKind::LocalMin: return "LocalMin";
    case StationaryKind::Inflection: return "Inflection";
  }
  return "?";
}

std::string_view to_string(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::UniqueMinimizer: return "UniqueMinimizer";
    case SolutionStatus::InfiniteFamily: return "InfiniteFamily";
    case SolutionStatus::LocalMinimizerOnly: return "LocalMinimizerOnly";
    case SolutionStatus::NoSolution: return "NoSolution";
  }
  return "?";
}

double hamiltonian(double u, double lambda) {
  return -1.0 / (1.0 + u * u) - lambda * u;
}

HamiltonianDerivatives hamiltonian_derivatives(double u, double lambda) {
  const double q = 1.0 + u * u;
  const double q2 = q * q;
  return {2.0 * u / q2 - lambda, -2.0 * (3.0 * u * u - 1.0) / (q2 * q),
          -24.0 * u * (1.0 - u * u) / (q2 * q2)};
}

std::vector<double> stationary_slopes(double lambda) {
  require_positive_lambda(lambda);
  if (lambda > kLambdaThreshold * (1.0 + kThresholdRelTol)) return {};
  if (lambda >= kLambdaThreshold * (1.0 - kThresholdRelTol))
    return {kInflectionSlope};

  const double target = 0.5 * lambda;
  const double low = bisect_branch(target, 0.0, kInflectionSlope, true);
  // half_gain(u) < u^-3, so it is below target beyond cbrt(2/lambda).
  const double upper = std::max(2.0, 2.0 * std::cbrt(2.0 / lambda));
  const double high = bisect_branch(target, kInflectionSlope, upper, false);
  return {low, high};
}

double lambda_for_slope(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw std::invalid_argument("slope must be positive and finite");
  const double q = 1.0 + s * s;
  return 2.0 * s / (q * q);
}

StationaryKind classify_by_derivative_order(std::span<const double> derivatives,
                                            double zero_tol) {
  for (std::size_t i = 0; i < derivatives.size(); ++i) {
    const double d = derivatives[i];
    if (std::abs(d) <= zero_tol) continue;
    const std::size_t order = i + 2;
    if (order % 2 == 1) return StationaryKind::Inflection;
    return d < 0.0 ? StationaryKind::LocalMax : StationaryKind::LocalMin;
  }
  throw std::domain_error("all supplied derivatives vanish; test inconclusive");
}

StationaryKind classify_stationary(double u) {
  // lambda does not enter H'' or H'''.
  const auto d = hamiltonian_derivatives(u, 0.0);
  const double second =
      std::abs(u - kInflectionSlope) <= kInflectionTolerance ? 0.0 : d.second;
  const double higher[] = {second, d.third};
  return classify_by_derivative_order(higher, 0.0);
}

CertificateReport check_certificate(const Profile& profile,
                                    const ProblemSpec& spec, double lambda,
                                    const CertificateConfig& config) {
  CertificateReport rep;
  rep.lambda = lambda;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    rep.notes.push_back("lambda must be positive");
    return rep;
  }
  if (profile.segment_count() == 0) {
    rep.notes.push_back("profile has no segments");
    return rep;
  }
  const auto slopes = profile.slopes();
  rep.worst_violation = -INFINITY;

  if (spec.variant == Variant::Restricted) {
    rep.mode = "global-grid";
    const double bound = config.bound > 0.0
                             ? config.bound
                             : std::max(10.0, 10.0 * spec.H / spec.r);
    const std::size_t points = std::max<std::size_t>(config.grid_points, 2);
    const double du = bound / static_cast<double>(points - 1);
    const GridMax best = scan_max(lambda, 0.0, du, points, config.workers);
    rep.scan_lo = 0.0;
    rep.scan_hi = bound;
    rep.grid_points = points;
    rep.best_slope = du * static_cast<double>(best.index);
    rep.best_value = best.value;
    bool in_set = true;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      if (slopes[i] < -config.tolerance) {
        in_set = false;
        rep.notes.push_back("segment " + std::to_string(i) +
                            " has a negative slope outside the control set");
      }
      const double violation = best.value - hamiltonian(slopes[i], lambda);
      if (violation > rep.worst_violation) {
        rep.worst_violation = violation;
        rep.worst_segment = i;
      }
    }
    rep.pass = in_set && rep.worst_violation <= config.tolerance;
    return rep;
  }

  rep.mode = "local";
  rep.notes.push_back(
      "unrestricted Hamiltonian is unbounded above as u -> -inf; only local "
      "maximality is checked");
  const std::size_t points = std::max<std::size_t>(config.local_points, 3);
  const double radius = config.local_radius;
  const double du = 2.0 * radius / static_cast<double>(points - 1);
  rep.grid_points = points;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    const double u = slopes[i];
    const GridMax best = kernels::active().hamiltonian_grid_max(
        lambda, u - radius, du, 0, points);
    const double violation = best.value - hamiltonian(u, lambda);
    if (violation > rep.worst_violation) {
      rep.worst_violation = violation;
      rep.worst_segment = i;
      rep.scan_lo = u - radius;
      rep.scan_hi = u + radius;
      rep.best_slope = (u - radius) + du * static_cast<double>(best.index);
      rep.best_value = best.value;
    }
  }
  rep.pass = rep.worst_violation <= config.tolerance;
  return rep;
}

SolutionReport solve(const ProblemSpec& spec) {
  if (spec.dimension != Dimension::Two)
    throw std::invalid_argument(
        "closed-form solver covers the two-dimensional problem only");
  const double r = spec.r;
  const double H = spec.H;
  const double s = H / r;
  SolutionReport rep;
  rep.variant = spec.variant;

  if (spec.variant == Variant::Unrestricted) {
    if (s > kInflectionSlope) {
      rep.status = SolutionStatus::LocalMinimizerOnly;
      rep.minimal_resistance = triangle_resistance(r, H);
      rep.representatives.push_back(make_triangle(spec));
      rep.certificate = make_certificate(lambda_for_slope(s));
      rep.notes.push_back(
          "the triangle is a local minimizer only: wedges with slopes +a/-a "
          "have resistance r/(1+a^2) -> 0, so no global minimum exists");
    } else {
      rep.status = SolutionStatus::NoSolution;
      rep.notes.push_back(
          "H/r <= 1/sqrt(3): the constant slope H/r does not maximize the "
          "Hamiltonian, so the problem has no solution");
    }
    return rep;
  }

  if (H < r) {
    rep.status = SolutionStatus::InfiniteFamily;
    rep.minimal_resistance = staircase_minimum(r, H);
    const double f = r - H;
    rep.representatives.push_back(make_staircase(
        spec, StaircaseParams{1, {0.0, f, r, r}, {0.0, H}}));
    rep.representatives.push_back(make_staircase(
        spec, StaircaseParams{1, {0.0, 0.0, H, r}, {0.0, H}}));
    rep.representatives.push_back(
        make_staircase(spec, staircase_n(spec, {f / 3, f / 3, f / 3},
                                         {H / 2, H / 2})));
    rep.certificate = make_certificate(0.5);
    rep.notes.push_back(
        "every control alternating slope 0 and slope 1 with total rise width "
        "H is a minimizer");
    return rep;
  }

  rep.status = SolutionStatus::UniqueMinimizer;
  rep.minimal_resistance = triangle_resistance(r, H);
  rep.representatives.push_back(make_triangle(spec));
  rep.certificate = make_certificate(lambda_for_slope(s));
  if (H == r)
    rep.notes.push_back(
        "H = r: the slope-{0,1} family needs total flat width r - H = 0 and "
        "collapses to the triangle; reported as unique although the family "
        "description is sometimes stated for H <= r");
  return rep;
}

std::vector<StaircaseParams> enumerate_minimizers(const ProblemSpec& spec,
                                                  int n, int count,
                                                  std::uint64_t rng_seed) {
  if (spec.variant != Variant::Restricted)
    throw std::invalid_argument("minimizing family exists for restricted only");
  if (spec.H > spec.r)
    throw std::invalid_argument("family is empty for H > r");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (count < 1) throw std::invalid_argument("count must be >= 1");

  // Stick-breaking with exponential spacings (flat Dirichlet weights).
  auto split = [](Rng& rng, int parts, double total) {
    std::vector<double> w(parts);
    double sum = 0.0;
    for (auto& v : w) {
      v = exponential(rng);
      sum += v;
    }
    for (auto& v : w) v = sum > 0.0 ? total * (v / sum) : total / parts;
    return w;
  };

  std::vector<StaircaseParams> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    Rng rng(derive_seed(rng_seed, static_cast<std::uint64_t>(c)));
    auto flats = split(rng, n + 1, spec.r - spec.H);
    auto rises = split(rng, n, spec.H);
    out.push_back(staircase_n(spec, std::move(flats), std::move(rises)));
  }
  return out;
}

std::vector<double> staircase_free_coordinates(const StaircaseParams& p) {
  std::vector<double> z(p.xi.begin() + 1, p.xi.end() - 1);
  z.insert(z.end(), p.mu.begin() + 1, p.mu.end() - 1);
  return z;
}

StaircaseParams staircase_from_free(std::span<const double> z, int n,
                                    const ProblemSpec& spec) {
  const auto un = static_cast<std::size_t>(n);
  if (z.size() != 3 * un - 1)
    throw std::invalid_argument("free coordinate count must be 3n-1");
  StaircaseParams p;
  p.n = n;
  p.xi.push_back(0.0);
  p.xi.insert(p.xi.end(), z.begin(), z.begin() + 2 * n);
  p.xi.push_back(spec.r);
  p.mu.push_back(0.0);
  p.mu.insert(p.mu.end(), z.begin() + 2 * n, z.end());
  p.mu.push_back(spec.H);
  return p;
}

std::vector<double> staircase_gradient(const StaircaseParams& p,
                                       const ProblemSpec& spec) {
  check_staircase_params(spec, p);
  const int n = p.n;
  std::vector<double> cw(n), ch(n);
  for (int i = 0; i < n; ++i) {
    const double w = p.rise_width(i);
    const double h = p.rise_height(i);
    const double w2 = w * w;
    const double h2 = h * h;
    const double d2 = (w2 + h2) * (w2 + h2);
    cw[i] = (w2 * w2 + 3.0 * w2 * h2) / d2;
    ch[i] = -2.0 * w2 * w * h / d2;
  }
  std::vector<double> g;
  g.reserve(3 * n - 1);
  for (int i = 0; i < n; ++i) {
    g.push_back(1.0 - cw[i]);  // xi_{2i+1}: end of flat i, start of rise i
    g.push_back(cw[i] - 1.0);  // xi_{2i+2}: end of rise i, start of flat i+1
  }
  for (int i = 1; i < n; ++i) g.push_back(ch[i - 1] - ch[i]);
  return g;
}

StationarityReport staircase_gradient_check(const StaircaseParams& p,
                                            const ProblemSpec& spec,
                                            double fd_step) {
  check_staircase_params(spec, p);
  double min_gap = INFINITY;
  for (std::size_t i = 1; i < p.xi.size(); ++i) {
    if (!(p.xi[i] > p.xi[i - 1]))
      throw std::invalid_argument(
          "xi chain not strictly increasing: point is on the feasible-set "
          "boundary");
    min_gap = std::min(min_gap, p.xi[i] - p.xi[i - 1]);
  }
  for (std::size_t i = 1; i < p.mu.size(); ++i) {
    if (!(p.mu[i] > p.mu[i - 1]))
      throw std::invalid_argument(
          "mu chain not strictly increasing: point is on the feasible-set "
          "boundary");
    min_gap = std::min(min_gap, p.mu[i] - p.mu[i - 1]);
  }
  if (!(fd_step > 0.0) || fd_step * 2.0 >= min_gap)
    throw std::invalid_argument("finite-difference step must be positive and "
                                "below half the smallest gap");

  StationarityReport rep;
  rep.analytic = staircase_gradient(p, spec);
  const int n = p.n;
  const auto eval = [n, &spec](std::span<const double> z) {
    return staircase_resistance(staircase_from_free(z, n, spec), spec);
  };
  const auto z = staircase_free_coordinates(p);
  rep.finite_difference = finite_difference_gradient(eval, z, fd_step);
  rep.analytic_norm = norm2(rep.analytic);
  rep.finite_difference_norm = norm2(rep.finite_difference);
  for (std::size_t i = 0; i < z.size(); ++i)
    rep.max_abs_difference =
        std::max(rep.max_abs_difference,
                 std::abs(rep.analytic[i] - rep.finite_difference[i]));
  return rep;
}

}  // namespace newton2d
