#include "newton2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace newton2d {

namespace {

// Relative slack when comparing user-supplied coordinates with r and H.
constexpr double kCoordTol = 1e-12;

bool close_to(double a, double b, double scale) {
  return std::abs(a - b) <= kCoordTol * std::max(1.0, std::abs(scale));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::Restricted ? "restricted" : "unrestricted";
}

Variant parse_variant(std::string_view text) {
  if (text == "restricted") return Variant::Restricted;
  if (text == "unrestricted") return Variant::Unrestricted;
  throw std::invalid_argument("unknown variant '" + std::string(text) +
                              "' (expected restricted|unrestricted)");
}

ProblemSpec ProblemSpec::make(double r, double H, Variant variant,
                              Dimension dimension) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("r must be positive and finite");
  if (!(H > 0.0) || !std::isfinite(H))
    throw std::invalid_argument("H must be positive and finite");
  return ProblemSpec{r, H, variant, dimension};
}

Profile::Profile(ProblemSpec spec, std::vector<Point> breakpoints)
    : spec_(spec), points_(std::move(breakpoints)) {}

double Profile::width(std::size_t segment) const {
  return points_.at(segment + 1).x - points_.at(segment).x;
}

double Profile::slope(std::size_t segment) const {
  return (points_.at(segment + 1).y - points_.at(segment).y) / width(segment);
}

std::vector<double> Profile::slopes() const {
  std::vector<double> out(segment_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = slope(i);
  return out;
}

std::size_t Profile::segment_index(double x) const {
  if (points_.size() < 2) throw std::out_of_range("profile has no segments");
  if (!(x >= points_.front().x) || !(x <= points_.back().x))
    throw std::out_of_range("x = " + fmt(x) + " outside profile domain");
  // First breakpoint strictly greater than x bounds the containing segment
  // from the right (right-continuity at interior breakpoints).
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  if (it == points_.end()) return segment_count() - 1;
  return static_cast<std::size_t>(it - points_.begin()) - 1;
}

double Profile::slope_at(double x) const { return slope(segment_index(x)); }

double Profile::height_at(double x) const {
  const std::size_t i = segment_index(x);
  return points_[i].y + slope(i) * (x - points_[i].x);
}

bool Profile::operator==(const Profile& other) const {
  return spec_.r == other.spec_.r && spec_.H == other.spec_.H &&
         spec_.variant == other.spec_.variant && points_ == other.points_;
}

Profile make_triangle(const ProblemSpec& spec) {
  return Profile(spec, {{0.0, 0.0}, {spec.r, spec.H}});
}

void check_staircase_params(const ProblemSpec& spec,
                            const StaircaseParams& p) {
  if (p.n < 1) throw std::invalid_argument("staircase n must be >= 1");
  const auto n = static_cast<std::size_t>(p.n);
  if (p.xi.size() != 2 * n + 2)
    throw std::invalid_argument("staircase xi must have 2n+2 entries");
  if (p.mu.size() != n + 1)
    throw std::invalid_argument("staircase mu must have n+1 entries");
  for (double v : p.xi)
    if (!std::isfinite(v)) throw std::invalid_argument("xi must be finite");
  for (double v : p.mu)
    if (!std::isfinite(v)) throw std::invalid_argument("mu must be finite");
  if (p.xi.front() != 0.0) throw std::invalid_argument("xi[0] must be 0");
  if (p.mu.front() != 0.0) throw std::invalid_argument("mu[0] must be 0");
  if (!close_to(p.xi.back(), spec.r, spec.r))
    throw std::invalid_argument("last xi must equal r");
  if (!close_to(p.mu.back(), spec.H, spec.H))
    throw std::invalid_argument("last mu must equal H");
  for (std::size_t i = 1; i < p.xi.size(); ++i)
    if (p.xi[i] < p.xi[i - 1])
      throw std::invalid_argument("xi must be nondecreasing (index " +
                                  std::to_string(i) + ")");
  for (std::size_t i = 1; i < p.mu.size(); ++i)
    if (p.mu[i] < p.mu[i - 1])
      throw std::invalid_argument("mu must be nondecreasing (index " +
                                  std::to_string(i) + ")");
  for (int i = 0; i < p.n; ++i)
    if (p.rise_width(i) <= 0.0 && p.rise_height(i) > 0.0)
      throw std::invalid_argument("rise " + std::to_string(i) +
                                  " has positive height over zero width");
}

Profile make_staircase(const ProblemSpec& spec, const StaircaseParams& p) {
  check_staircase_params(spec, p);

  std::vector<Point> pts{{0.0, 0.0}};
  auto push = [&](double x, double y) {
    if (x > pts.back().x) pts.push_back({x, y});
  };
  for (int i = 0; i <= p.n; ++i) {
    push(p.xi[2 * i + 1], p.mu[i]);
    if (i < p.n) push(p.xi[2 * i + 2], p.mu[i + 1]);
  }
  // Pin the endpoint exactly; params were accepted within kCoordTol.
  pts.back() = {spec.r, spec.H};
  return Profile(spec, std::move(pts));
}

Profile make_counterexample(const ProblemSpec& spec,
                            const CounterexampleParams& params) {
  if (spec.variant == Variant::Restricted)
    throw std::invalid_argument(
        "counterexample has a descending face; needs the unrestricted variant");
  const double a = params.a;
  const double min_a = spec.H / spec.r;
  if (!(a > 0.0) || !std::isfinite(a) ||
      a < min_a * (1.0 - kCoordTol))
    throw std::invalid_argument("counterexample slope a must satisfy a >= H/r");
  const double x_switch = spec.r / 2.0 + spec.H / (2.0 * a);
  if (x_switch >= spec.r) return make_triangle(spec);
  return Profile(spec, {{0.0, 0.0}, {x_switch, a * x_switch}, {spec.r, spec.H}});
}

ValidationResult validate(const Profile& profile, const ProblemSpec& spec) {
  ValidationResult res;
  const auto& pts = profile.breakpoints();
  auto add = [&](std::string msg) { res.violations.push_back(std::move(msg)); };

  if (pts.size() < 2) {
    add("profile needs at least one segment");
    return res;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].x) || !std::isfinite(pts[i].y))
      add("breakpoint " + std::to_string(i) + " is not finite");
  }
  if (pts.front().x != 0.0 || pts.front().y != 0.0)
    add("first breakpoint must be (0, 0), got (" + fmt(pts.front().x) + ", " +
        fmt(pts.front().y) + ")");
  if (!close_to(pts.back().x, spec.r, spec.r))
    add("endpoint mismatch: last x = " + fmt(pts.back().x) + ", r = " +
        fmt(spec.r));
  if (!close_to(pts.back().y, spec.H, spec.H))
    add("endpoint mismatch: y(r) = " + fmt(pts.back().y) + ", H = " +
        fmt(spec.H));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1].x > pts[i].x)) {
      add("x not strictly increasing at segment " + std::to_string(i));
      continue;
    }
    if (spec.variant == Variant::Restricted && profile.slope(i) < 0.0)
      add("negative slope " + fmt(profile.slope(i)) + " on segment " +
          std::to_string(i) + " violates the restricted control set");
  }
  return res;
}

}  // namespace newton2d
