#include "newton2d/functional.hpp"

#include <stdexcept>

namespace newton2d {

namespace {

// w^3 / (w^2 + h^2), written as w / (1 + (h/w)^2) for w > 0.
double rise_cost(double w, double h) {
  if (w <= 0.0) return 0.0;
  const double u = h / w;
  return w / (1.0 + u * u);
}

}  // namespace

double resistance_2d(const Profile& profile) {
  double total = 0.0;
  for (std::size_t i = 0; i < profile.segment_count(); ++i) {
    const double u = profile.slope(i);
    total += profile.width(i) / (1.0 + u * u);
  }
  return total;
}

double resistance_3d(const Profile& profile) {
  const auto& pts = profile.breakpoints();
  double total = 0.0;
  for (std::size_t i = 0; i < profile.segment_count(); ++i) {
    const double u = profile.slope(i);
    const double x0 = pts[i].x;
    const double x1 = pts[i + 1].x;
    total += (x1 - x0) * (x1 + x0) / (2.0 * (1.0 + u * u));
  }
  return total;
}

double staircase_resistance(const StaircaseParams& params,
                            const ProblemSpec& spec) {
  check_staircase_params(spec, params);
  double total = 0.0;
  for (int i = 0; i <= params.n; ++i) total += params.flat_width(i);
  for (int i = 0; i < params.n; ++i)
    total += rise_cost(params.rise_width(i), params.rise_height(i));
  return total;
}

double branch_resistance_initial_flat(double xi, const ProblemSpec& spec) {
  if (!(xi >= 0.0 && xi < spec.r))
    throw std::out_of_range("initial-flat branch needs 0 <= xi < r");
  return xi + rise_cost(spec.r - xi, spec.H);
}

double branch_resistance_final_flat(double xi, const ProblemSpec& spec) {
  if (!(xi > 0.0 && xi <= spec.r))
    throw std::out_of_range("final-flat branch needs 0 < xi <= r");
  return rise_cost(xi, spec.H) + (spec.r - xi);
}

double branch_resistance_final_flat_derivative(double xi,
                                               const ProblemSpec& spec) {
  if (!(xi > 0.0 && xi <= spec.r))
    throw std::out_of_range("final-flat branch needs 0 < xi <= r");
  const double x2 = xi * xi;
  const double h2 = spec.H * spec.H;
  const double d = x2 + h2;
  // (xi^4 + 3 xi^2 H^2) / (xi^2 + H^2)^2 - 1
  return h2 * (x2 - h2) / (d * d);
}

ResistanceDifference resistance_difference(double xi, const ProblemSpec& spec) {
  if (!(xi >= 0.0 && xi <= spec.r))
    throw std::out_of_range("resistance difference needs 0 <= xi <= r");
  const double r = spec.r;
  const double H = spec.H;
  const double triangle = triangle_resistance(r, H);
  const double branch = xi > 0.0 ? branch_resistance_final_flat(xi, spec) : r;
  const double h2 = H * H;
  const double closed =
      h2 * (r - xi) * (r * xi - h2) / ((xi * xi + h2) * (r * r + h2));
  return {triangle - branch, closed};
}

double resistance_difference_as_printed(double xi, const ProblemSpec& spec) {
  const double r = spec.r;
  const double h2 = spec.H * spec.H;
  return xi * h2 * (r * r - r * xi - h2) /
         (((r - xi) * (r - xi) + h2) * (r * r + h2));
}

}  // namespace newton2d
