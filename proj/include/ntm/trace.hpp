#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ntm/network.hpp"

namespace ntm {

struct ContextVariable {
  std::string id;
  std::string name;
  std::string description;

  friend bool operator==(const ContextVariable&, const ContextVariable&) = default;
};

struct Evaluation {
  std::uint64_t time = 0;  // global step
  std::string value;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// The time series of one variable's values. Its id is the variable id.
struct EvaluationVector {
  std::string variable;
  std::vector<Evaluation> evaluations;  // times strictly increasing, values non-empty

  friend bool operator==(const EvaluationVector&, const EvaluationVector&) = default;
};

/// The environment as seen by a system: all vectors (C), the declared
/// context subset (C_A), and where vectors enter and leave the network.
struct ContextTrace {
  std::vector<ContextVariable> variables;
  std::vector<EvaluationVector> vectors;
  std::vector<std::string> awareness_subset;
  std::map<std::string, PortRef> bindings_in;   // vector id -> input tape
  std::map<PortRef, std::string> bindings_out;  // output port -> vector id

  const EvaluationVector* find_vector(const std::string& id) const;

  friend bool operator==(const ContextTrace&, const ContextTrace&) = default;
};

/// Invariant violations of `trace`, and of its bindings against `n` when given.
std::vector<std::string> trace_problems(const ContextTrace& trace, const Network* n = nullptr);

/// Character -> symbol mapping used to put evaluations on tapes. By default
/// character c becomes the one-character symbol "c". Every evaluation is
/// terminated by `delimiter`.
struct Encoding {
  Symbol delimiter{"#"};
  std::map<char, Symbol> overrides;

  Symbol encode(char c) const;
};

/// Adds the delimiter to both alphabets of every machine a trace binding
/// feeds.
Network admit_delimiter(Network n, const ContextTrace& trace, const Encoding& encoding = {});

/// Source id used for a vector's injections: "ctx:<vector>", so it cannot
/// clash with a sink named after an outbound vector.
std::string trace_source_id(const std::string& vector);

/// One external source per bound vector in `include` (all bound vectors when
/// `include` is null), named by trace_source_id(). Each evaluation (t, value)
/// becomes the value's symbols followed by the delimiter, all scheduled at
/// global step t; the scheduler puts them on consecutive micro-ticks.
/// Throws UnencodableValue when a symbol is outside the bound machine's tape
/// alphabet, InvalidNetwork when a binding points nowhere.
std::vector<ExternalSource> encode_trace(const ContextTrace& trace, const Network& n, const Encoding& encoding = {},
                                         const std::set<std::string>* include = nullptr);

}  // namespace ntm
