#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ntm/model.hpp"

namespace ntm {

enum class NodeKind { Procedure, Context };

struct GraphNode {
  NodeKind kind = NodeKind::Procedure;
  std::string key;  // numeric id for procedures, letters for contexts
  std::string label;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::string from;  // node keys
  std::string to;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// G = (T, I). Nodes: procedures by numeric id, then contexts by letter.
/// Edges: each directed pair once, ordered by (from, to) node position.
struct Graph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  const GraphNode* find(const std::string& key) const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

struct GraphOptions {
  /// Also emit declared nodes that take part in no connection.
  bool include_isolated = false;
};

/// Throws InvalidModel when validate_model reports errors.
Graph build_graph(const SystemModel& m, const GraphOptions& options = {});

/// Coarse procedure label -> fine procedure labels.
using RefinementMap = std::map<std::string, std::set<std::string>>;

/// A directed data-flow pair between model entities.
struct LabeledEdge {
  Endpoint from;
  Endpoint to;

  std::string str() const;  // "[a] -> (b)"
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

struct CoarseEdgeCheck {
  LabeledEdge edge;
  std::vector<LabeledEdge> witnesses;  // fine edges realizing it

  bool realized() const { return !witnesses.empty(); }
  friend bool operator==(const CoarseEdgeCheck&, const CoarseEdgeCheck&) = default;
};

struct RefinementReport {
  std::vector<CoarseEdgeCheck> coarse_edges;
  std::vector<LabeledEdge> extraneous;  // fine edges with no coarse counterpart
  std::vector<std::string> unmapped_fine;  // fine procedures in no group

  std::size_t realized() const;
  bool valid() const;  // every coarse edge realized, nothing extraneous
  friend bool operator==(const RefinementReport&, const RefinementReport&) = default;
};

/// Checks that `fine` refines `coarse` when each coarse procedure is replaced
/// by its group under `mapping`. Contexts correspond by label. A fine edge
/// inside one group is internal to the refined procedure and always allowed.
/// Throws IncompleteMapping when a coarse procedure has no group or the
/// mapping names unknown labels; InvalidModel when either model has errors.
RefinementReport refine_check(const SystemModel& coarse, const SystemModel& fine, const RefinementMap& mapping);

/// Human-readable report, one line per coarse edge.
std::string format_report(const RefinementReport& report);

}  // namespace ntm
