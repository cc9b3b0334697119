#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntm/scheduler.hpp"
#include "ntm/trace.hpp"

namespace ntm {

/// Levenshtein distance over symbol sequences.
std::size_t edit_distance(std::span<const Symbol> a, std::span<const Symbol> b);

/// 1 - distance / max(|a|, |b|); 1.0 when both are empty.
double normalized_edit_similarity(std::span<const Symbol> a, std::span<const Symbol> b);

/// A similarity score in [0, 1] between two output streams.
using SimilarityMetric = std::function<double(std::span<const Symbol>, std::span<const Symbol>)>;

enum class VectorStatus { ConsumedAndProduced, ConsumedNoOutput, Unconsumed };

const char* to_string(VectorStatus status);
VectorStatus vector_status_from_string(std::string_view text);

struct VectorAwareness {
  std::string vector;
  VectorStatus status = VectorStatus::Unconsumed;
  std::optional<PortRef> binding;  // empty when the vector is not bound
  std::size_t evaluations = 0;
  std::size_t consumed = 0;  // evaluations whose symbols were all read
  std::size_t answered = 0;  // consumed evaluations followed by an emission

  friend bool operator==(const VectorAwareness&, const VectorAwareness&) = default;
};

/// Emissions observed on a declared system-to-environment edge.
struct OutboundObservation {
  PortRef port;
  std::string vector;
  std::size_t emissions = 0;

  friend bool operator==(const OutboundObservation&, const OutboundObservation&) = default;
};

struct AwarenessReport {
  bool aware = false;
  bool vacuous = false;
  std::vector<VectorAwareness> vectors;  // C_A, sorted by id
  std::vector<OutboundObservation> outbound;

  friend bool operator==(const AwarenessReport&, const AwarenessReport&) = default;
};

struct AwarenessOptions {
  /// Throw UnboundVector for a C_A vector without an input binding instead of
  /// reporting it as unconsumed.
  bool require_bindings = false;
  Encoding encoding;
};

/// Checks context-awareness: every evaluation of every vector in C_A must be
/// accepted by its bound machine (the read head passes all of the
/// evaluation's symbols, delimiter included) and the machine must emit at
/// least one symbol at or after the transition that completes the read.
/// `result` must come from running `n` with encode_trace(trace) injected.
/// An empty C_A is reported as not aware and vacuous.
AwarenessReport check_awareness(const Network& n, const RunResult& result, const ContextTrace& trace,
                                const AwarenessOptions& options = {});

/// Injects `trace` into `n` (after admit_delimiter), runs it and checks it.
AwarenessReport run_and_check_awareness(const Network& n, const ContextTrace& trace,
                                        std::uint64_t budget = kDefaultBudget,
                                        const AwarenessOptions& options = {});

struct SimilarityConfig {
  double threshold = 0.8;
  SimilarityMetric metric = normalized_edit_similarity;
  std::uint64_t budget = kDefaultBudget;
  Encoding encoding;
};

struct SinkSimilarity {
  std::string sink;
  double score = 0.0;

  friend bool operator==(const SinkSimilarity&, const SinkSimilarity&) = default;
};

struct EffectivenessReport {
  std::vector<std::string> full;     // C_A
  std::vector<std::string> reduced;  // C_A'
  bool degenerate = false;           // C_A' == C_A
  std::vector<SinkSimilarity> per_sink;
  double score = 0.0;  // metric over all sink streams concatenated in sink-id order
  double threshold = 0.8;
  bool effective = false;
  std::vector<std::string> warnings;

  friend bool operator==(const EffectivenessReport&, const EffectivenessReport&) = default;
};

/// Runs `n` once with all of C_A injected and once with only `subset`, then
/// scores the sink streams with `config.metric`. Vectors outside C_A and the
/// network's own sources are injected in both runs. The two runs execute
/// concurrently.
/// Throws NotASubset.
EffectivenessReport check_effective(const Network& n, const ContextTrace& trace, std::span<const std::string> subset,
                                    const SimilarityConfig& config = {});

}  // namespace ntm
