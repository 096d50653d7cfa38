#pragma once

// Reference computations used only by the tests. Each one reaches its value
// by a different route than the library (quadrature instead of per-segment
// sums, long-double bisection instead of the library solver, brute grids).

#include <cmath>
#include <functional>
#include <vector>

#include "newton2d/geometry.hpp"

namespace oracle {

/// Composite 5-point Gauss-Legendre over [a, b] split into `pieces`.
inline long double gauss(const std::function<long double(long double)>& f,
                         long double a, long double b, int pieces = 64) {
  static const long double xs[5] = {0.0L, 0.538469310105683091036314420700L,
                                    -0.538469310105683091036314420700L,
                                    0.906179845938663992797626878299L,
                                    -0.906179845938663992797626878299L};
  static const long double ws[5] = {0.568888888888888888888888888889L,
                                    0.478628670499366468041291514836L,
                                    0.478628670499366468041291514836L,
                                    0.236926885056189087514264040720L,
                                    0.236926885056189087514264040720L};
  long double sum = 0.0L;
  const long double h = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const long double c = a + (p + 0.5L) * h;
    for (int k = 0; k < 5; ++k) sum += ws[k] * f(c + 0.5L * h * xs[k]);
  }
  return 0.5L * h * sum;
}

/// Slope from a symmetric difference of the interpolated height inside
/// each segment, then integrated by quadrature.
inline long double resistance_by_quadrature(const newton2d::Profile& p,
                                            bool axisymmetric = false) {
  const auto& bp = p.breakpoints();
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const long double x0 = bp[i].x, x1 = bp[i + 1].x;
    const long double u =
        (static_cast<long double>(bp[i + 1].y) - bp[i].y) / (x1 - x0);
    total += gauss(
        [&](long double x) {
          const long double w = axisymmetric ? x : 1.0L;
          return w / (1.0L + u * u);
        },
        x0, x1, 4);
  }
  return total;
}

/// Roots of 2u/(1+u^2)^2 = lambda on u >= 0 by long-double bisection over a
/// fine sign-change scan of [0, 50].
inline std::vector<long double> stationary_roots(long double lambda) {
  auto g = [&](long double u) {
    const long double q = 1.0L + u * u;
    return 2.0L * u / (q * q) - lambda;
  };
  std::vector<long double> roots;
  const int n = 200000;
  long double prev_u = 0.0L, prev_g = g(0.0L);
  for (int i = 1; i <= n; ++i) {
    const long double u = 50.0L * i / n;
    const long double gu = g(u);
    if ((prev_g < 0) != (gu < 0)) {
      long double lo = prev_u, hi = u;
      for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if ((g(mid) < 0) == (prev_g < 0))
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5L * (lo + hi));
    }
    prev_u = u;
    prev_g = gu;
  }
  return roots;
}

/// Brute-force maximum of the Hamiltonian over an even grid on [lo, hi].
inline long double hamiltonian_max(long double lambda, long double lo,
                                   long double hi, int n) {
  long double best = -INFINITY;
  for (int i = 0; i <= n; ++i) {
    const long double u = lo + (hi - lo) * i / n;
    best = std::max(best, -1.0L / (1.0L + u * u) - lambda * u);
  }
  return best;
}

/// Plain exhaustive DP in long double with explicit loops, no kernels.
inline long double dp_reference(double r, double H, int N, int M, bool monotone,
                                int K) {
  const long double dx = static_cast<long double>(r) / N;
  const long double dh = static_cast<long double>(H) / M;
  const int lo = monotone ? 0 : -K * N;
  const int hi = monotone ? M : K * N + M;
  const int span = hi - lo + 1;
  std::vector<long double> cur(span, INFINITY), nxt(span);
  cur[-lo] = 0.0L;
  for (int i = 0; i < N; ++i) {
    std::fill(nxt.begin(), nxt.end(), INFINITY);
    for (int l = 0; l < span; ++l) {
      if (!std::isfinite(cur[l])) continue;
      for (int k = monotone ? 0 : -K; k <= K; ++k) {
        const int t = l + k;
        if (t < 0 || t >= span) continue;
        const long double u = k * dh / dx;
        nxt[t] = std::min(nxt[t], cur[l] + dx / (1.0L + u * u));
      }
    }
    std::swap(cur, nxt);
  }
  return cur[M - lo];
}

}  // namespace oracle
