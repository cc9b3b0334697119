#include <set>
#include <sstream>

#include "ntm/error.hpp"
#include "ntm/graph.hpp"

namespace ntm {

std::string LabeledEdge::str() const { return from.str() + " -> " + to.str(); }

std::size_t RefinementReport::realized() const {
  std::size_t n = 0;
  for (const auto& c : coarse_edges) n += c.realized() ? 1 : 0;
  return n;
}

bool RefinementReport::valid() const { return realized() == coarse_edges.size() && extraneous.empty(); }

namespace {

std::set<LabeledEdge> edges_of(const SystemModel& m) {
  std::set<LabeledEdge> out;
  for (const auto& s : m.connections) {
    for (const auto& [from, to] : s.flows()) out.insert({from, to});
  }
  return out;
}

void require_valid(const SystemModel& m, const char* which) {
  const auto report = validate_model(m);
  if (report.errors() > 0) {
    throw Error(Errc::InvalidModel, std::string(which) + " model has errors\n" + format_report(report));
  }
}

}  // namespace

RefinementReport refine_check(const SystemModel& coarse, const SystemModel& fine, const RefinementMap& mapping) {
  require_valid(coarse, "coarse");
  require_valid(fine, "fine");

  std::vector<std::string> problems;
  for (const auto& p : coarse.procedures) {
    auto it = mapping.find(p.label);
    if (it == mapping.end() || it->second.empty()) problems.push_back("coarse procedure '" + p.label + "' has no group");
  }
  std::map<std::string, std::set<std::string>> groups_of;  // fine label -> coarse labels
  for (const auto& [coarse_label, group] : mapping) {
    if (!coarse.find_procedure(coarse_label)) problems.push_back("'" + coarse_label + "' is not a coarse procedure");
    for (const auto& f : group) {
      if (!fine.find_procedure(f)) problems.push_back("'" + f + "' is not a fine procedure");
      groups_of[f].insert(coarse_label);
    }
  }
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(Errc::IncompleteMapping, msg);
  }

  auto images = [&](const Endpoint& e) {
    std::vector<Endpoint> out;
    if (e.kind == EndpointKind::Context) {
      if (coarse.find_context(e.label)) out.push_back(e);
    } else if (auto it = groups_of.find(e.label); it != groups_of.end()) {
      for (const auto& c : it->second) out.push_back({EndpointKind::Procedure, c});
    }
    return out;
  };

  RefinementReport report;
  std::map<LabeledEdge, std::size_t> index;
  for (const auto& e : edges_of(coarse)) {
    index[e] = report.coarse_edges.size();
    report.coarse_edges.push_back({e, {}});
  }
  for (const auto& e : edges_of(fine)) {
    bool explained = false;
    for (const auto& a : images(e.from)) {
      for (const auto& b : images(e.to)) {
        if (auto it = index.find({a, b}); it != index.end()) {
          report.coarse_edges[it->second].witnesses.push_back(e);
          explained = true;
        } else if (a == b) {
          explained = true;
        }
      }
    }
    if (!explained) report.extraneous.push_back(e);
  }
  for (const auto& p : fine.procedures) {
    if (!groups_of.contains(p.label)) report.unmapped_fine.push_back(p.label);
  }
  return report;
}

std::string format_report(const RefinementReport& report) {
  std::ostringstream os;
  for (const auto& c : report.coarse_edges) {
    os << (c.realized() ? "realized   " : "UNREALIZED ") << c.edge.str();
    for (std::size_t i = 0; i < c.witnesses.size(); ++i) os << (i ? ", " : "  by ") << c.witnesses[i].str();
    os << '\n';
  }
  for (const auto& e : report.extraneous) os << "extraneous " << e.str() << '\n';
  for (const auto& p : report.unmapped_fine) os << "unmapped   [" << p << "]\n";
  os << report.realized() << '/' << report.coarse_edges.size() << " coarse edges realized, " << report.extraneous.size()
     << " extraneous\n";
  return os.str();
}

}  // namespace ntm
