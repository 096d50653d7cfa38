#pragma once

// JSON wire formats. Parsing goes through nlohmann::json; output uses a
// fixed writer that prints every floating-point number with 17 significant
// digits so repeated runs are byte-identical.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "newton2d/extremal.hpp"
#include "newton2d/montecarlo.hpp"
#include "newton2d/oracle.hpp"

namespace newton2d {

using Json = nlohmann::ordered_json;

/// Doubles print as %.17g; non-finite doubles print as null.
void write_json(std::ostream& os, const Json& value, int indent = 2);
std::string dump_json(const Json& value, int indent = 2);

/// { "r", "H", "variant", "breakpoints": [[x, y], ...] }
Json to_json(const Profile& profile);
/// Throws std::invalid_argument on a malformed document.
Profile profile_from_json(const Json& doc);
Profile read_profile_file(const std::filesystem::path& path);
void write_profile_file(const std::filesystem::path& path,
                        const Profile& profile);

/// { "status", "resistance", "lambda", "profiles", "notes", "certificate" }
Json to_json(const SolutionReport& report);
/// { "estimate", "std_error", "n_samples", "seed" }
Json to_json(const McEstimate& estimate);
/// { "claim", "expected", "observed", "tolerance", "pass" }
Json to_json(const VerificationClaim& claim);

}  // namespace newton2d
