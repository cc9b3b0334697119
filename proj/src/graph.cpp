#include <algorithm>
#include <map>
#include <set>

#include "ntm/error.hpp"
#include "ntm/graph.hpp"

namespace ntm {

const GraphNode* Graph::find(const std::string& key) const {
  for (const auto& n : nodes) {
    if (n.key == key) return &n;
  }
  return nullptr;
}

Graph build_graph(const SystemModel& m, const GraphOptions& options) {
  const ModelReport report = validate_model(m);
  if (report.errors() > 0) {
    throw Error(Errc::InvalidModel, "model has " + std::to_string(report.errors()) + " error(s)\n" + format_report(report));
  }

  std::set<std::string> used;  // labels
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& s : m.connections) {
    for (const auto& [from, to] : s.flows()) {
      used.insert(from.label);
      used.insert(to.label);
      pairs.emplace(from.label, to.label);
    }
  }

  std::vector<const ProcedureDecl*> procs;
  for (const auto& p : m.procedures) procs.push_back(&p);
  std::sort(procs.begin(), procs.end(), [](auto a, auto b) { return a->id < b->id; });
  std::vector<const ContextDecl*> ctxs;
  for (const auto& c : m.contexts) ctxs.push_back(&c);
  std::sort(ctxs.begin(), ctxs.end(), [](auto a, auto b) { return a->id < b->id; });

  Graph g;
  std::map<std::string, std::pair<std::size_t, std::string>> by_label;  // label -> (position, key)
  auto keep = [&](const std::string& label) { return options.include_isolated || used.contains(label); };
  for (auto p : procs) {
    if (!keep(p->label)) continue;
    by_label[p->label] = {g.nodes.size(), std::to_string(p->id)};
    g.nodes.push_back({NodeKind::Procedure, std::to_string(p->id), p->label});
  }
  for (auto c : ctxs) {
    if (!keep(c->label)) continue;
    by_label[c->label] = {g.nodes.size(), c->id};
    g.nodes.push_back({NodeKind::Context, c->id, c->label});
  }

  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const auto& [from, to] : pairs) order.emplace_back(by_label.at(from).first, by_label.at(to).first);
  std::sort(order.begin(), order.end());
  for (const auto& [a, b] : order) g.edges.push_back({g.nodes[a].key, g.nodes[b].key});
  return g;
}

}  // namespace ntm
