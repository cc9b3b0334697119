#pragma once

#include <json.hpp>

#include "ntm/awareness.hpp"
#include "ntm/graph.hpp"
#include "ntm/network.hpp"
#include "ntm/scheduler.hpp"

namespace ntm {

inline constexpr int kTreeVersion = 1;

// Structured trees: JSON objects carrying "schema" and "version" fields.
// Schemas are in schemas/*.schema.json. Each from_tree checks the schema name
// and version and throws FormatError on anything it cannot read back.

nlohmann::json to_tree(const Graph& g);
Graph graph_from_tree(const nlohmann::json& j);

nlohmann::json to_tree(const RunResult& r);
/// `n` supplies the machine specs the states refer to.
RunResult run_result_from_tree(const nlohmann::json& j, const Network& n);

nlohmann::json to_tree(const AwarenessReport& r);
AwarenessReport awareness_report_from_tree(const nlohmann::json& j);

nlohmann::json to_tree(const EffectivenessReport& r);
EffectivenessReport effectiveness_report_from_tree(const nlohmann::json& j);

nlohmann::json to_tree(const RefinementReport& r);
RefinementReport refinement_report_from_tree(const nlohmann::json& j);

}  // namespace ntm
