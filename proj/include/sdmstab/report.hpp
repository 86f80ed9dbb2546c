#pragma once

#include <string>

#include <json.hpp>

#include "sdmstab/boundary.hpp"
#include "sdmstab/simulator.hpp"
#include "sdmstab/winding.hpp"

namespace sdm {

using Json = nlohmann::json;

// JSON views of the result types. Non-finite doubles (the unbounded interval
// end, an undefined closed-form x) are stored as null.

Json to_json(const ZeroPointCandidate& c);
Json to_json(const StabilityReport& r);
Json to_json(const CharacteristicPoints& p);
Json to_json(const RootCountResult& r);
Json to_json(const SimResult& r);
Json to_json(const WindowReport& r);

/// Finite doubles pass through; infinities and NaN become null.
Json number_or_null(double v);

/// Serializes with every float printed to 17 significant digits, so the text
/// parses back to the identical double.
std::string dump_json(const Json& j, int indent = 2);

/// "key: value" lines; nested objects use dotted keys, arrays of objects use
/// key[i] prefixes, arrays of scalars print inline.
std::string dump_text(const Json& j);

/// %.17g formatting shared by the CSV and text writers.
std::string format_double(double v);

}  // namespace sdm
