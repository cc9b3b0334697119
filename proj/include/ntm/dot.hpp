#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ntm/graph.hpp"

namespace ntm {

enum class RenderFormat { Dot, Tree };

RenderFormat render_format_from_string(std::string_view text);  // "dot" | "tree"

struct RenderConfig {
  RenderFormat format = RenderFormat::Dot;
  std::string graph_name = "G";
};

/// Procedures are boxes labeled "<id>: <label>", contexts ellipses labeled
/// "<letter>: <label>". Output is deterministic for a given graph.
std::string to_dot(const Graph& g, const RenderConfig& cfg = {});

/// to_dot, or the structured tree (pretty JSON) for RenderFormat::Tree.
std::string render(const Graph& g, const RenderConfig& cfg = {});

using DotAttributes = std::map<std::string, std::string>;

struct DotNode {
  std::string id;
  DotAttributes attributes;
};

struct DotEdge {
  std::string from;
  std::string to;
  DotAttributes attributes;
};

/// What read_dot understood. Nodes appear once, in order of first mention.
struct DotGraph {
  bool strict = false;
  bool directed = true;
  std::string name;
  DotAttributes graph_attributes;
  std::vector<DotNode> nodes;
  std::vector<DotEdge> edges;

  const DotNode* find(const std::string& id) const;
};

/// Reads one graph in the DOT language: node, edge and attribute statements,
/// quoted and bare IDs, ports, comments. Subgraphs and HTML labels are not
/// supported. Throws FormatError.
DotGraph read_dot(std::string_view text);

/// Inverse of to_dot. Throws FormatError on nodes it did not produce.
Graph graph_from_dot(const DotGraph& dot);

}  // namespace ntm
