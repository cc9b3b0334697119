#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ntm {

struct ProcedureDecl {
  unsigned id = 0;
  std::string label;
  std::string comment;
  std::size_t line = 0;  // 0 when not parsed from a document

  friend bool operator==(const ProcedureDecl& a, const ProcedureDecl& b) {
    return a.id == b.id && a.label == b.label && a.comment == b.comment;
  }
};

struct ContextDecl {
  std::string id;  // letters
  std::string label;
  std::string comment;
  std::size_t line = 0;

  friend bool operator==(const ContextDecl& a, const ContextDecl& b) {
    return a.id == b.id && a.label == b.label && a.comment == b.comment;
  }
};

enum class EndpointKind { Procedure, Context };

/// `[label]` or `(label)`.
struct Endpoint {
  EndpointKind kind = EndpointKind::Procedure;
  std::string label;

  std::string str() const;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

enum class Arrow { Right, Left, Both };  // ->  <-  <->

const char* to_string(Arrow arrow);  // Unicode form

/// con(from, to): `from` may print on an input tape of `to`.
struct ConTerm {
  std::string from;
  std::string to;

  friend bool operator==(const ConTerm&, const ConTerm&) = default;
  friend auto operator<=>(const ConTerm&, const ConTerm&) = default;
};

struct ConnectionStmt {
  std::vector<ConTerm> con_clause;  // optional prefix
  Endpoint left;
  Arrow arrow = Arrow::Right;
  Endpoint right;
  std::string comment;
  std::size_t line = 0;

  /// The data-flow pairs the arrow denotes, left-to-right first.
  std::vector<std::pair<Endpoint, Endpoint>> flows() const;

  friend bool operator==(const ConnectionStmt& a, const ConnectionStmt& b) {
    return a.con_clause == b.con_clause && a.left == b.left && a.arrow == b.arrow && a.right == b.right &&
           a.comment == b.comment;
  }
};

/// Verbatim text kept with a section: fenced blocks and comments that follow
/// no declaration.
struct DocBlock {
  std::string section;
  std::string text;

  friend bool operator==(const DocBlock&, const DocBlock&) = default;
};

struct SystemModel {
  std::string abstract_text;  // paragraphs separated by a blank line
  std::vector<ProcedureDecl> procedures;
  std::vector<ContextDecl> contexts;
  std::vector<ConnectionStmt> connections;
  std::vector<std::string> graphs;  // opaque figure sections
  std::vector<DocBlock> documentation;

  const ProcedureDecl* find_procedure(std::string_view label) const;
  const ContextDecl* find_context(std::string_view label) const;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

/// Parses a model document. Sections start with a line `name.`: abstract,
/// procedures, context, connections, graph (or graphs). `//` comments run to
/// the end of the line; a comment alone on a line belongs to the previous
/// declaration. Arrows may be written → ← ↔ or -> <- <->, and con-clause
/// terms are joined by ∧, /\ or &.
/// Throws ParseError with code SyntaxError, DuplicateLabel or UnknownSection.
SystemModel parse_model(std::string_view document);

/// Canonical text form; parse_model(print_model(m)) == m.
std::string print_model(const SystemModel& m);

enum class FindingKind {
  UndeclaredLabel,
  DuplicateDeclaration,
  ConClauseMismatch,
  ContextToContext,
  UnconnectedProcedure,
};

enum class Severity { Error, Warning };

const char* to_string(FindingKind kind);  // "undeclared label", ...
const char* to_string(Severity severity);

struct Finding {
  FindingKind kind;
  Severity severity;
  std::size_t line = 0;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ModelReport {
  std::vector<Finding> findings;

  std::size_t errors() const;
  std::size_t warnings() const;
  bool clean() const { return findings.empty(); }
  bool has(FindingKind kind) const;
};

ModelReport validate_model(const SystemModel& m);

/// One line per finding: `line N: error: undeclared label: ...`.
std::string format_report(const ModelReport& report);

}  // namespace ntm
