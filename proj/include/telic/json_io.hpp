#pragma once

#include <string>

#include "json.hpp"
#include "telic/barriers.hpp"
#include "telic/bssvm.hpp"
#include "telic/instance.hpp"
#include "telic/maps.hpp"
#include "telic/solve.hpp"

namespace telic {

using Json = nlohmann::ordered_json;

/// All scalar values cross the boundary in the exact number grammar (strings);
/// bare JSON integers are accepted on input for whole numbers.

Json map_to_json(const MapSpec& m);
MapSpec map_from_json(const Json& j);

Json instance_to_json(const TelicInstance& inst);
TelicInstance instance_from_json(const Json& j);

Json result_to_json(const SolveResult& res);
SolveResult result_from_json(const Json& j);
Json all_result_to_json(const SolveAllResult& res);

Json interval_to_json(const Interval& iv);
Interval interval_from_json(const Json& j, const std::string& ctx);

/// Eta files are plain arrays of {"from": {...}, "to": {...}}; the grid
/// parameters ride on flags, not on the file.
Json eta_to_json(const EtaTable& eta);
EtaTable eta_from_json(const Json& j, unsigned n, unsigned domain_grid);

Json phi_to_json(const PhiTable& phi);
PhiTable phi_from_json(const Json& j);

Json program_to_json(const BssProgram& prog);
BssProgram program_from_json(const Json& j);

/// Parse failures surface as ParseError naming `what`.
Json parse_json_text(const std::string& text, const std::string& what);
std::string dump_json(const Json& j);

}  // namespace telic
