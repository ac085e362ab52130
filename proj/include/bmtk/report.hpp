#pragma once

#include <json.hpp>
#include <string>

#include "bmtk/gauge.hpp"
#include "bmtk/grid.hpp"
#include "bmtk/norms.hpp"
#include "bmtk/paraproduct.hpp"
#include "bmtk/wente.hpp"

namespace bmtk {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "bmtk 1.0.0";

/// Keys sorted, two-space indent, floats with 17 significant digits,
/// non-finite floats as the strings "inf", "-inf", "nan". Ends in a newline.
std::string canonical_dump(const Json& j);

/// Reads a number or one of the strings written by canonical_dump.
double json_number(const Json& j);

Json to_json(const GridSpec& spec);
Json to_json(const BallFamily& balls);
Json to_json(const SpaceSpec& space);
Json to_json(const NormResult& r);
Json to_json(const ScalingReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const SupportReport& r);
Json to_json(const StabilityReport& r);
Json to_json(const WenteReport& r);
Json to_json(const HessianReport& r);
Json to_json(const CounterexampleRow& r);
Json to_json(const GaugeEstimates& e);
Json to_json(const GaugePair& g);
Json to_json(const ConservationRow& r);

}  // namespace bmtk
