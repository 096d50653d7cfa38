#pragma once

// Problem data and piecewise-linear body profiles for the two-dimensional
// minimal-resistance problem: minimize the integral of 1/(1+u^2) over [0, r]
// subject to y' = u, y(0) = 0, y(r) = H and u in the control set.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace newton2d {

/// Control set: Unrestricted allows any slope, Restricted requires u >= 0.
enum class Variant { Unrestricted, Restricted };
enum class Dimension { Two, Three };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

struct ProblemSpec {
  double r = 1.0;
  double H = 1.0;
  Variant variant = Variant::Restricted;
  Dimension dimension = Dimension::Two;

  /// Validating factory; throws std::invalid_argument unless r > 0 and H > 0.
  static ProblemSpec make(double r, double H, Variant variant,
                          Dimension dimension = Dimension::Two);

  double aspect() const { return H / r; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Continuous piecewise-linear contour y(x) stored by its breakpoints.
/// Slopes are derived, never stored. A Profile may hold data that violates
/// the admissibility rules (e.g. one read from disk); use validate() to
/// check it against its spec.
class Profile {
 public:
  Profile() = default;
  Profile(ProblemSpec spec, std::vector<Point> breakpoints);

  const ProblemSpec& spec() const { return spec_; }
  const std::vector<Point>& breakpoints() const { return points_; }
  std::size_t segment_count() const {
    return points_.empty() ? 0 : points_.size() - 1;
  }
  double width(std::size_t segment) const;
  double slope(std::size_t segment) const;
  std::vector<double> slopes() const;

  /// Slope of the segment containing x. At an interior breakpoint the
  /// right-hand segment is used; at x = r the last segment.
  /// Throws std::out_of_range when x lies outside [0, r].
  double slope_at(double x) const;

  /// y(x) by linear interpolation, same domain rule as slope_at.
  double height_at(double x) const;

  bool operator==(const Profile& other) const;

 private:
  std::size_t segment_index(double x) const;

  ProblemSpec spec_;
  std::vector<Point> points_;
};

/// Parameterization of bang-bang staircase controls: flats on
/// [xi[2i], xi[2i+1]] and rises of height mu[i+1]-mu[i] on
/// [xi[2i+1], xi[2i+2]].
struct StaircaseParams {
  int n = 1;
  std::vector<double> xi;  // size 2n+2
  std::vector<double> mu;  // size n+1

  double flat_width(int i) const { return xi[2 * i + 1] - xi[2 * i]; }
  double rise_width(int i) const { return xi[2 * i + 2] - xi[2 * i + 1]; }
  double rise_height(int i) const { return mu[i + 1] - mu[i]; }
};

/// Slope magnitude of the two-face wedge showing the unrestricted problem
/// has no global minimizer.
struct CounterexampleParams {
  double a = 1.0;
};

Profile make_triangle(const ProblemSpec& spec);

/// Throws std::invalid_argument on malformed params, endpoints inconsistent
/// with the spec, or a positive rise over zero width. Zero-width segments
/// are dropped.
Profile make_staircase(const ProblemSpec& spec, const StaircaseParams& params);

/// Throws std::invalid_argument for a Restricted spec or a < H/r.
Profile make_counterexample(const ProblemSpec& spec,
                            const CounterexampleParams& params);

/// Checks the shape of StaircaseParams (sizes, monotone chains, endpoints)
/// and throws std::invalid_argument describing the first violation.
void check_staircase_params(const ProblemSpec& spec,
                            const StaircaseParams& params);

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Reports every violated admissibility rule; never throws.
ValidationResult validate(const Profile& profile, const ProblemSpec& spec);
inline ValidationResult validate(const Profile& profile) {
  return validate(profile, profile.spec());
}

}  // namespace newton2d
