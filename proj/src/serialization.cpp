#include "newton2d/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace newton2d {

namespace {

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write_value(std::ostream& os, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write_value(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays (coordinate pairs) stay on one line.
      const bool inline_row =
          v.size() <= 4 && std::all_of(v.begin(), v.end(), [](const Json& e) {
            return e.is_number();
          });
      os << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << (inline_row ? ", " : ",");
        if (!inline_row) newline(depth + 1);
        write_value(os, v[i], indent, depth + 1);
      }
      if (!inline_row) newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, v.get<double>());
      return;
    default:
      os << v.dump();
      return;
  }
}

double require_number(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw std::invalid_argument(std::string("profile JSON: '") + key +
                                "' must be a number");
  return doc[key].get<double>();
}

}  // namespace

void write_json(std::ostream& os, const Json& value, int indent) {
  write_value(os, value, indent, 0);
}

std::string dump_json(const Json& value, int indent) {
  std::ostringstream os;
  write_json(os, value, indent);
  return os.str();
}

Json to_json(const Profile& profile) {
  Json pts = Json::array();
  for (const auto& p : profile.breakpoints()) pts.push_back(Json::array({p.x, p.y}));
  Json doc;
  doc["r"] = profile.spec().r;
  doc["H"] = profile.spec().H;
  doc["variant"] = std::string(to_string(profile.spec().variant));
  doc["breakpoints"] = std::move(pts);
  return doc;
}

Profile profile_from_json(const Json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("profile JSON must be an object");
  const double r = require_number(doc, "r");
  const double H = require_number(doc, "H");
  if (!doc.contains("variant") || !doc["variant"].is_string())
    throw std::invalid_argument("profile JSON: 'variant' must be a string");
  const Variant variant = parse_variant(doc["variant"].get<std::string>());
  const ProblemSpec spec = ProblemSpec::make(r, H, variant);
  if (!doc.contains("breakpoints") || !doc["breakpoints"].is_array())
    throw std::invalid_argument("profile JSON: 'breakpoints' must be an array");
  std::vector<Point> pts;
  for (const auto& bp : doc["breakpoints"]) {
    if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() ||
        !bp[1].is_number())
      throw std::invalid_argument(
          "profile JSON: each breakpoint must be [x, y] numbers");
    pts.push_back({bp[0].get<double>(), bp[1].get<double>()});
  }
  return Profile(spec, std::move(pts));
}

Profile read_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " +
                                e.what());
  }
  return profile_from_json(doc);
}

void write_profile_file(const std::filesystem::path& path,
                        const Profile& profile) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_json(out, to_json(profile));
  out << '\n';
}

Json to_json(const SolutionReport& report) {
  Json doc;
  doc["status"] = std::string(to_string(report.status));
  doc["variant"] = std::string(to_string(report.variant));
  doc["resistance"] = report.minimal_resistance
                          ? Json(*report.minimal_resistance)
                          : Json(nullptr);
  doc["lambda"] =
      report.certificate ? Json(report.certificate->lambda) : Json(nullptr);
  Json profiles = Json::array();
  for (const auto& p : report.representatives) profiles.push_back(to_json(p));
  doc["profiles"] = std::move(profiles);
  Json notes = Json::array();
  for (const auto& n : report.notes) notes.push_back(n);
  doc["notes"] = std::move(notes);
  if (report.certificate) {
    Json cert;
    cert["psi0"] = report.certificate->psi0;
    cert["lambda"] = report.certificate->lambda;
    Json st = Json::array();
    for (const auto& s : report.certificate->stationary)
      st.push_back({{"slope", s.slope}, {"kind", std::string(to_string(s.kind))}});
    cert["stationary_slopes"] = std::move(st);
    doc["certificate"] = std::move(cert);
  } else {
    doc["certificate"] = nullptr;
  }
  return doc;
}

Json to_json(const McEstimate& e) {
  Json doc;
  doc["estimate"] = e.estimate;
  doc["std_error"] = e.std_error;
  doc["n_samples"] = e.n_samples;
  doc["seed"] = e.seed;
  return doc;
}

Json to_json(const VerificationClaim& c) {
  Json doc;
  doc["claim"] = c.claim;
  doc["expected"] = c.expected;
  doc["observed"] = c.observed;
  doc["tolerance"] = c.tolerance;
  doc["pass"] = c.pass;
  return doc;
}

}  // namespace newton2d
