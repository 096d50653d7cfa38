#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "newton2d/serialization.hpp"

using namespace newton2d;

TEST_CASE("doubles print with 17 significant digits") {
  Json doc;
  doc["a"] = 0.1;
  doc["b"] = 2.0;
  doc["c"] = NAN;
  doc["d"] = 7;
  const auto s = dump_json(doc, 0);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"c\": null") != std::string::npos);
  CHECK(s.find("\"d\": 7") != std::string::npos);
  // Round trip through the standard parser.
  const auto back = Json::parse(s);
  CHECK(back["a"].get<double>() == 0.1);
  CHECK(back["c"].is_null());
}

TEST_CASE("profile JSON round-trips exactly") {
  const auto spec = ProblemSpec::make(1.0, 1.0 / 3.0, Variant::Unrestricted);
  const Profile p(spec, {{0.0, 0.0}, {1.0 / 7.0, 0.4}, {1.0, 1.0 / 3.0}});
  const auto back = profile_from_json(Json::parse(dump_json(to_json(p))));
  CHECK(back == p);
  CHECK(back.spec().variant == Variant::Unrestricted);

  const auto path = std::filesystem::temp_directory_path() / "n2d_profile.json";
  write_profile_file(path, p);
  CHECK(read_profile_file(path) == p);
  std::filesystem::remove(path);
}

TEST_CASE("malformed profile documents are rejected") {
  CHECK_THROWS_AS(profile_from_json(Json::array()), std::invalid_argument);
  CHECK_THROWS_AS(profile_from_json(Json::parse(R"({"r":1,"H":1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      profile_from_json(Json::parse(
          R"({"r":1,"H":1,"variant":"sideways","breakpoints":[[0,0],[1,1]]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      profile_from_json(Json::parse(
          R"({"r":1,"H":1,"variant":"restricted","breakpoints":[[0,0],[1]]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      profile_from_json(Json::parse(
          R"({"r":-1,"H":1,"variant":"restricted","breakpoints":[]})")),
      std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "n2d_bad.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_profile_file(path), std::invalid_argument);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_profile_file("/nonexistent/p.json"), std::invalid_argument);
}

TEST_CASE("solution report layout") {
  SolutionReport rep;
  rep.status = SolutionStatus::NoSolution;
  rep.variant = Variant::Unrestricted;
  const auto doc = to_json(rep);
  CHECK(doc["status"] == "NoSolution");
  CHECK(doc["resistance"].is_null());
  CHECK(doc["lambda"].is_null());
  CHECK(doc["certificate"].is_null());
  CHECK(doc["profiles"].empty());
}

TEST_CASE("estimate layout") {
  const auto doc = to_json(McEstimate{0.8, 1e-4, 1000, 42});
  CHECK(doc["estimate"] == 0.8);
  CHECK(doc["std_error"] == 1e-4);
  CHECK(doc["n_samples"] == 1000);
  CHECK(doc["seed"] == 42);
}
