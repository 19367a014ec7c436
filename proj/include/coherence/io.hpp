#pragma once

// JSON wire formats:
//   density   {"dim": d, "re": [[..]], "im": [[..]]}            (row-major)
//   ensemble  {"dim": d, "components": [{"p": w, "re": [..], "im": [..]}, ..]}
//   bound     {"bound", "achieved", "gap", "equality_condition_met", "witness"}
//   ordering  {"values": {"M", "s", "m1", "m2"}, "relations_8_ok", "relations_9_ok", ...}

#include <json.hpp>

#include <string>

#include "coherence/bloch.hpp"
#include "coherence/bounds.hpp"

namespace coherence::io {

using Json = nlohmann::ordered_json;

/// Tolerance applied when reading density matrices.
inline constexpr double kReadTolerance = 1e-9;

Json density_to_json(const DensityMatrix& rho);
/// Throws ParseError on malformed input, then the validate_density errors.
DensityMatrix density_from_json(const Json& j);

Json ensemble_to_json(const Ensemble& ensemble);
/// Members and weights within 1e-9 of normalized are renormalized.
Ensemble ensemble_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& report);
Json ordering_to_json(const OrderingRecord& record);

DensityMatrix read_density_file(const std::string& path);

}  // namespace coherence::io
