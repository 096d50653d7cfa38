#include "newton2d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "newton2d/kernels.hpp"
#include "newton2d/rng.hpp"

namespace newton2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TrialResult {
  double delta = 0.0;
  double quad = 0.0;  // (eps^2/2) * integral(phi^2)
};

struct Cell {
  double width;
  double slope;
};

std::vector<Cell> random_mesh(const Profile& profile, int mesh, Rng& rng) {
  const double r = profile.breakpoints().back().x;
  std::vector<double> xs;
  xs.reserve(mesh + profile.breakpoints().size());
  for (const auto& p : profile.breakpoints()) xs.push_back(p.x);
  for (int i = 0; i + 1 < mesh; ++i) xs.push_back(uniform(rng, 0.0, r));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Cell> cells;
  cells.reserve(xs.size());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double w = xs[i + 1] - xs[i];
    if (w <= 0.0) continue;
    cells.push_back({w, profile.slope_at(xs[i] + 0.5 * w)});
  }
  return cells;
}

TrialResult run_trial(const Profile& profile, bool restricted, double eps,
                      int mesh, std::uint64_t seed) {
  Rng rng(seed);
  const auto cells = random_mesh(profile, mesh, rng);
  std::vector<double> phi(cells.size());
  for (auto& v : phi) v = uniform(rng, -1.0, 1.0);

  // Cells whose slope can absorb a unit shift without leaving the control set.
  std::vector<char> free(cells.size(), 1);
  if (restricted) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const double u = cells[j].slope;
      if (u < 2.0 * eps) {
        free[j] = 0;
        phi[j] = std::max(phi[j], -u / eps);
      }
    }
  }
  double mass = 0.0;
  double free_width = 0.0;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    mass += cells[j].width * phi[j];
    if (free[j]) free_width += cells[j].width;
  }
  if (free_width <= 0.0)
    throw std::invalid_argument(
        "no segment can absorb a zero-mean perturbation at this epsilon");
  const double shift = mass / free_width;
  double sup = 0.0;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (free[j]) phi[j] -= shift;
    sup = std::max(sup, std::abs(phi[j]));
  }
  if (sup > 1.0)
    for (auto& v : phi) v /= sup;

  TrialResult out;
  double phi2 = 0.0;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const double u = cells[j].slope;
    const double d = eps * phi[j];
    const double a = u + d;
    // f(a) - f(u) for f(u) = 1/(1+u^2), without cancellation.
    const double df = -d * (u + a) / ((1.0 + a * a) * (1.0 + u * u));
    out.delta += cells[j].width * df;
    phi2 += cells[j].width * phi[j] * phi[j];
  }
  out.quad = 0.5 * eps * eps * phi2;
  return out;
}

}  // namespace

DpResult dp_min_resistance(const ProblemSpec& spec, const DpConfig& config) {
  const int N = config.n_cells;
  const int M = config.n_levels;
  if (N < 2 || M < 2)
    throw std::invalid_argument("DP grid needs n_cells >= 2 and n_levels >= 2");
  if (!(config.slope_bound >= 0.0) || !std::isfinite(config.slope_bound))
    throw std::invalid_argument("slope_bound must be finite and >= 0");
  const bool restricted = spec.variant == Variant::Restricted;
  if (!restricted && !(config.slope_bound > 0.0))
    throw std::invalid_argument(
        "unrestricted DP needs a positive slope bound (no minimum otherwise)");

  const double dx = spec.r / N;
  const double dh = spec.H / M;
  long K = M;
  if (config.slope_bound > 0.0) {
    const double levels = config.slope_bound * dx / dh;
    K = static_cast<long>(std::floor(levels * (1.0 + 1e-12)));
    if (restricted) K = std::min<long>(K, M);
  }
  if (K * static_cast<long>(N) < M)
    throw std::invalid_argument(
        "infeasible grid: total rise H unreachable under the slope bound");

  const long kmin = restricted ? 0 : -K;
  const long lo = restricted ? 0 : -((K * N - M + 1) / 2);
  const long hi = restricted ? M : (K * N + M + 1) / 2;
  const auto span = static_cast<std::size_t>(hi - lo + 1);

  std::vector<double> cost(static_cast<std::size_t>(K - kmin + 1));
  for (long k = kmin; k <= K; ++k) {
    const double u = static_cast<double>(k) * dh / dx;
    cost[k - kmin] = dx / (1.0 + u * u);
  }

  const auto& kern = kernels::active();
  std::vector<double> prev(span, kInf), next(span);
  std::vector<std::int64_t> arg(static_cast<std::size_t>(N) * span, 0);
  prev[static_cast<std::size_t>(-lo)] = 0.0;

  for (int i = 0; i < N; ++i) {
    std::fill(next.begin(), next.end(), kInf);
    std::int64_t* row = arg.data() + static_cast<std::size_t>(i) * span;
    for (long k = kmin; k <= K; ++k) {
      const long first = std::max(lo, lo + k);
      const long last = std::min(hi, hi + k);
      if (first > last) continue;
      kern.relax_shift(prev.data() + (first - k - lo), cost[k - kmin],
                       next.data() + (first - lo), row + (first - lo), k,
                       static_cast<std::size_t>(last - first + 1));
    }
    std::swap(prev, next);
  }

  DpResult res;
  res.dx = dx;
  res.dh = dh;
  res.value = prev[static_cast<std::size_t>(M - lo)];
  if (!std::isfinite(res.value))
    throw std::invalid_argument("infeasible grid: end level unreachable");

  res.cell_rises.assign(N, 0);
  long level = M;
  for (int i = N - 1; i >= 0; --i) {
    const auto k = arg[static_cast<std::size_t>(i) * span +
                       static_cast<std::size_t>(level - lo)];
    res.cell_rises[i] = static_cast<int>(k);
    level -= k;
  }

  std::vector<Point> pts{{0.0, 0.0}};
  long cum = 0;
  for (int i = 0; i < N; ++i) {
    cum += res.cell_rises[i];
    const bool run_ends = i + 1 == N || res.cell_rises[i + 1] != res.cell_rises[i];
    if (!run_ends) continue;
    const double x = i + 1 == N ? spec.r : spec.r * (i + 1) / N;
    const double y = i + 1 == N ? spec.H : static_cast<double>(cum) * dh;
    pts.push_back({x, y});
  }
  res.profile = Profile(spec, std::move(pts));
  return res;
}

double integrand_second_derivative(double s) {
  const double q = 1.0 + s * s;
  return (6.0 * s * s - 2.0) / (q * q * q);
}

PerturbationReport second_variation_test(const Profile& profile,
                                         const ProblemSpec& spec,
                                         const PerturbationConfig& config) {
  if (!(config.epsilon > 0.0) || config.trials < 1 || config.mesh < 2)
    throw std::invalid_argument(
        "perturbation config needs epsilon > 0, trials >= 1, mesh >= 2");
  const bool restricted = spec.variant == Variant::Restricted;

  std::vector<TrialResult> results(config.trials);
  const unsigned workers =
      std::clamp<unsigned>(config.workers, 1u, static_cast<unsigned>(config.trials));
  auto work = [&](unsigned w) {
    for (int t = static_cast<int>(w); t < config.trials;
         t += static_cast<int>(workers))
      results[t] = run_trial(profile, restricted, config.epsilon, config.mesh,
                             derive_seed(config.rng_seed, t));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  PerturbationReport rep;
  rep.trials = config.trials;
  rep.epsilon = config.epsilon;
  rep.min_delta = kInf;
  rep.max_delta = -kInf;
  rep.ratio_min = kInf;
  rep.ratio_max = -kInf;
  double sum_delta = 0.0;
  double sum_quad = 0.0;
  for (const auto& t : results) {
    rep.min_delta = std::min(rep.min_delta, t.delta);
    rep.max_delta = std::max(rep.max_delta, t.delta);
    if (t.delta < 0.0) ++rep.negative_trials;
    sum_delta += t.delta;
    sum_quad += t.quad;
    if (t.quad > 0.0) {
      const double ratio = t.delta / t.quad;
      rep.ratio_min = std::min(rep.ratio_min, ratio);
      rep.ratio_max = std::max(rep.ratio_max, ratio);
    }
  }
  rep.ratio = sum_quad > 0.0 ? sum_delta / sum_quad : 0.0;

  const auto slopes = profile.slopes();
  if (!slopes.empty() &&
      std::all_of(slopes.begin(), slopes.end(),
                  [&](double u) { return u == slopes.front(); }))
    rep.expected_ratio = integrand_second_derivative(slopes.front());
  return rep;
}

std::vector<double> finite_difference_gradient(const ScalarField& evaluator,
                                               std::span<const double> point,
                                               double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  std::vector<double> x(point.begin(), point.end());
  std::vector<double> grad(x.size());
  auto eval = [&](std::span<const double> at) {
    double v;
    try {
      v = evaluator(at);
    } catch (const std::exception& e) {
      throw std::domain_error(std::string("evaluator undefined at stencil: ") +
                              e.what());
    }
    if (!std::isfinite(v))
      throw std::domain_error("evaluator returned a non-finite value");
    return v;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + step;
    const double fp = eval(x);
    x[i] = x0 - step;
    const double fm = eval(x);
    x[i] = x0;
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

}  // namespace newton2d
