#pragma once

#include "codmetric/hyperspace.hpp"
#include "codmetric/partial_map.hpp"

#include <json.hpp>

#include <string>

namespace codmetric {

using Json = nlohmann::ordered_json;

// Interval objects: {"lo": rational-string, "hi": rational-string,
// "lo_open": bool, "hi_open": bool}; infinite ends spelled "-inf"/"inf".
Json interval_to_json(const Interval& interval);
Interval interval_from_json(const Json& j);

// Set literals are plain arrays of interval objects.
Json set_to_json(const IntervalSet& set);
IntervalSet set_from_json(const Json& arr, Space space);

// Set files carry the ambient space: {"space": ..., "intervals": [...]}.
Json open_set_to_json(const OpenSet& u);
OpenSet open_set_from_json(const Json& j);
Json compact_set_to_json(const CompactSet& k);
CompactSet compact_set_from_json(const Json& j);

// Closed sets: {"space": ..., "complement": [...]}.
Json closed_set_to_json(const ClosedSet& a);
ClosedSet closed_set_from_json(const Json& j);

// Functions: {"space": ..., "codomain": ..., "pieces": [{"domain":
// interval-object, "nodes": [{"x": ..., "y": ...}, ...]}, ...]}. The empty
// map is {"pieces": []}; space and codomain default to the reals.
Json partial_map_to_json(const PartialMap& f);
PartialMap partial_map_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

PartialMap load_partial_map(const std::string& path);
OpenSet load_open_set(const std::string& path);
CompactSet load_compact_set(const std::string& path);
ClosedSet load_closed_set(const std::string& path);

} // namespace codmetric
