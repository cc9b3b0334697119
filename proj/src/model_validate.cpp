#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ntm/model.hpp"

namespace ntm {

const char* to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::UndeclaredLabel: return "undeclared label";
    case FindingKind::DuplicateDeclaration: return "duplicate declaration";
    case FindingKind::ConClauseMismatch: return "con-clause/arrow mismatch";
    case FindingKind::ContextToContext: return "context-to-context connection";
    case FindingKind::UnconnectedProcedure: return "unconnected procedure";
  }
  return "unknown";
}

const char* to_string(Severity severity) { return severity == Severity::Error ? "error" : "warning"; }

std::size_t ModelReport::errors() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t ModelReport::warnings() const { return findings.size() - errors(); }

bool ModelReport::has(FindingKind kind) const {
  return std::any_of(findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; });
}

ModelReport validate_model(const SystemModel& m) {
  ModelReport report;
  auto error = [&report](FindingKind k, std::size_t line, std::string msg) {
    report.findings.push_back({k, Severity::Error, line, std::move(msg)});
  };

  std::map<std::string, std::size_t> labels;
  std::set<unsigned> procedure_ids;
  std::set<std::string> context_ids;
  for (const auto& p : m.procedures) {
    if (!labels.emplace(p.label, p.line).second) {
      error(FindingKind::DuplicateDeclaration, p.line, "label '" + p.label + "' declared twice");
    }
    if (!procedure_ids.insert(p.id).second) {
      error(FindingKind::DuplicateDeclaration, p.line, "procedure id " + std::to_string(p.id) + " declared twice");
    }
  }
  for (const auto& c : m.contexts) {
    if (!labels.emplace(c.label, c.line).second) {
      error(FindingKind::DuplicateDeclaration, c.line, "label '" + c.label + "' declared twice");
    }
    if (!context_ids.insert(c.id).second) {
      error(FindingKind::DuplicateDeclaration, c.line, "context id '" + c.id + "' declared twice");
    }
  }

  std::set<std::string> connected;
  for (const auto& s : m.connections) {
    for (const Endpoint* e : {&s.left, &s.right}) {
      const bool declared = e->kind == EndpointKind::Procedure ? m.find_procedure(e->label) != nullptr
                                                               : m.find_context(e->label) != nullptr;
      if (!declared) {
        const char* what = e->kind == EndpointKind::Procedure ? "procedure" : "context";
        error(FindingKind::UndeclaredLabel, s.line, e->str() + " is not a declared " + what);
      }
      if (e->kind == EndpointKind::Procedure) connected.insert(e->label);
    }
    if (s.left.kind == EndpointKind::Context && s.right.kind == EndpointKind::Context) {
      error(FindingKind::ContextToContext, s.line,
            s.left.str() + " " + to_string(s.arrow) + " " + s.right.str() + " touches no procedure");
    }
    if (!s.con_clause.empty()) {
      std::set<ConTerm> expected;
      for (const auto& [from, to] : s.flows()) expected.insert({from.label, to.label});
      const std::set<ConTerm> given(s.con_clause.begin(), s.con_clause.end());
      if (given != expected) {
        std::string want;
        for (const auto& t : expected) want += (want.empty() ? "" : " ∧ ") + ("con(" + t.from + ", " + t.to + ")");
        error(FindingKind::ConClauseMismatch, s.line, "arrow " + std::string(to_string(s.arrow)) + " means " + want);
      }
    }
  }

  for (const auto& p : m.procedures) {
    if (!connected.contains(p.label)) {
      report.findings.push_back({FindingKind::UnconnectedProcedure, Severity::Warning, p.line,
                                 "[" + p.label + "] takes part in no connection"});
    }
  }
  return report;
}

std::string format_report(const ModelReport& report) {
  std::ostringstream os;
  for (const auto& f : report.findings) {
    if (f.line) os << "line " << f.line << ": ";
    os << to_string(f.severity) << ": " << to_string(f.kind) << ": " << f.message << '\n';
  }
  return os.str();
}

}  // namespace ntm
