#include <sstream>

#include "ntm/model.hpp"

namespace ntm {

std::string Endpoint::str() const {
  return kind == EndpointKind::Procedure ? "[" + label + "]" : "(" + label + ")";
}

const char* to_string(Arrow arrow) {
  switch (arrow) {
    case Arrow::Right: return "→";
    case Arrow::Left: return "←";
    case Arrow::Both: return "↔";
  }
  return "?";
}

std::vector<std::pair<Endpoint, Endpoint>> ConnectionStmt::flows() const {
  switch (arrow) {
    case Arrow::Right: return {{left, right}};
    case Arrow::Left: return {{right, left}};
    case Arrow::Both: return {{left, right}, {right, left}};
  }
  return {};
}

const ProcedureDecl* SystemModel::find_procedure(std::string_view label) const {
  for (const auto& p : procedures) {
    if (p.label == label) return &p;
  }
  return nullptr;
}

const ContextDecl* SystemModel::find_context(std::string_view label) const {
  for (const auto& c : contexts) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

namespace {

void comment(std::ostream& os, const std::string& text) {
  if (!text.empty()) os << " // " << text;
  os << '\n';
}

void docs(std::ostream& os, const SystemModel& m, std::string_view section) {
  for (const auto& d : m.documentation) {
    if (d.section == section) os << "```\n" << d.text << "\n```\n";
  }
}

}  // namespace

std::string print_model(const SystemModel& m) {
  std::ostringstream os;
  docs(os, m, "");
  if (!m.abstract_text.empty()) os << "abstract. " << m.abstract_text << "\n\n";

  os << "procedures.\n";
  for (const auto& p : m.procedures) {
    os << p.id << " : [" << p.label << ']';
    comment(os, p.comment);
  }
  docs(os, m, "procedures");

  os << "\ncontext.\n";
  for (const auto& c : m.contexts) {
    os << c.id << " : (" << c.label << ')';
    comment(os, c.comment);
  }
  docs(os, m, "context");

  os << "\nconnections.\n";
  for (const auto& s : m.connections) {
    for (std::size_t i = 0; i < s.con_clause.size(); ++i) {
      os << (i ? " ∧ " : "") << "con(" << s.con_clause[i].from << ", " << s.con_clause[i].to << ')';
    }
    if (!s.con_clause.empty()) os << " : ";
    os << s.left.str() << ' ' << to_string(s.arrow) << ' ' << s.right.str();
    comment(os, s.comment);
  }
  docs(os, m, "connections");

  for (const auto& g : m.graphs) {
    os << "\ngraph.\n";
    if (!g.empty()) os << g << '\n';
  }
  return os.str();
}

}  // namespace ntm
