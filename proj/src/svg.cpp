#include "newton2d/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace newton2d {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_profile_svg(const Profile& profile, int width, int height) {
  if (width < 64 || height < 64)
    throw std::invalid_argument("SVG canvas must be at least 64x64");
  const auto& pts = profile.breakpoints();
  if (pts.size() < 2) throw std::invalid_argument("profile has no segments");

  double x_max = 0.0, y_min = 0.0, y_max = 0.0;
  for (const auto& p : pts) {
    x_max = std::max(x_max, std::abs(p.x));
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  if (y_max - y_min <= 0.0) y_max = y_min + 1.0;

  const double margin = 40.0;
  const double sx = (width - 2.0 * margin) / (2.0 * x_max);
  const double sy = (height - 2.0 * margin) / (y_max - y_min);
  const double s = std::min(sx, sy);
  const double cx = width / 2.0;
  const double base = height - margin - (height - 2.0 * margin - s * (y_max - y_min)) / 2.0;
  auto X = [&](double x) { return num(cx + s * x); };
  auto Y = [&](double y) { return num(base - s * (y - y_min)); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
     << ' ' << height << "\">\n"
     << "  <title>r=" << num(profile.spec().r) << " H=" << num(profile.spec().H)
     << ' ' << to_string(profile.spec().variant) << "</title>\n"
     << "  <g class=\"axes\" stroke=\"#999\" stroke-width=\"1\">\n"
     << "    <line x1=\"" << X(-x_max) << "\" y1=\"" << Y(0.0) << "\" x2=\""
     << X(x_max) << "\" y2=\"" << Y(0.0) << "\"/>\n"
     << "    <line x1=\"" << X(0.0) << "\" y1=\"" << Y(y_min) << "\" x2=\""
     << X(0.0) << "\" y2=\"" << Y(y_max) << "\"/>\n"
     << "  </g>\n";

  os << "  <polyline class=\"profile\" fill=\"none\" stroke=\"#1f4e9c\" "
        "stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " " : "") << X(pts[i].x) << ',' << Y(pts[i].y);
  os << "\"/>\n";

  os << "  <polyline class=\"mirror\" fill=\"none\" stroke=\"#1f4e9c\" "
        "stroke-width=\"2\" stroke-dasharray=\"6,3\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " " : "") << X(-pts[i].x) << ',' << Y(pts[i].y);
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace newton2d
