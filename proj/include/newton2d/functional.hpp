#pragma once

// Closed-form resistance functionals. Every admissible profile is
// piecewise linear, so the integrands are constant per segment and all
// evaluations are exact sums (no quadrature).

#include "newton2d/geometry.hpp"

namespace newton2d {

/// Integral of 1/(1+u^2) over [0, r].
double resistance_2d(const Profile& profile);

/// Integral of x/(1+u^2) over [0, r] (axisymmetric functional, evaluation only).
double resistance_3d(const Profile& profile);

/// Sum of flat widths plus w^3/(w^2+h^2) over the rises.
double staircase_resistance(const StaircaseParams& params,
                            const ProblemSpec& spec);

/// R(xi) = xi + (r-xi)^3/((r-xi)^2+H^2): flat on [0, xi], one rise to r.
/// Requires 0 <= xi < r.
double branch_resistance_initial_flat(double xi, const ProblemSpec& spec);

/// R(xi) = xi^3/(xi^2+H^2) + r - xi: one rise on [0, xi], flat to r.
/// Requires 0 < xi <= r.
double branch_resistance_final_flat(double xi, const ProblemSpec& spec);

/// d/dxi of branch_resistance_final_flat; vanishes at xi = H.
double branch_resistance_final_flat_derivative(double xi,
                                               const ProblemSpec& spec);

struct ResistanceDifference {
  double direct;      // triangle resistance minus final-flat branch resistance
  double closed_form; // H^2 (r-xi)(r xi - H^2) / ((xi^2+H^2)(r^2+H^2))
};

/// Triangle versus the final-flat branch. `direct` is authoritative.
/// Requires 0 <= xi <= r.
ResistanceDifference resistance_difference(double xi, const ProblemSpec& spec);

/// The right-hand side as typeset in the source derivation,
/// xi H^2 (r^2 - r xi - H^2) / (((r-xi)^2+H^2)(r^2+H^2)). Kept only so the
/// discrepancy with `direct` can be audited; do not use for decisions.
double resistance_difference_as_printed(double xi, const ProblemSpec& spec);

/// Closed-form minimal values.
inline double triangle_resistance(double r, double H) {
  return r * r * r / (r * r + H * H);
}
inline double staircase_minimum(double r, double H) { return r - H / 2.0; }

}  // namespace newton2d
