#include "ntm/awareness.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "ntm/error.hpp"

namespace ntm {

const char* to_string(VectorStatus status) {
  switch (status) {
    case VectorStatus::ConsumedAndProduced: return "consumed-and-produced";
    case VectorStatus::ConsumedNoOutput: return "consumed-no-output";
    case VectorStatus::Unconsumed: return "unconsumed";
  }
  return "unknown";
}

VectorStatus vector_status_from_string(std::string_view text) {
  for (auto s : {VectorStatus::ConsumedAndProduced, VectorStatus::ConsumedNoOutput, VectorStatus::Unconsumed}) {
    if (text == to_string(s)) return s;
  }
  throw Error(Errc::FormatError, "unknown vector status '" + std::string(text) + "'");
}

namespace {

std::vector<std::string> sorted_unique(std::span<const std::string> ids) {
  std::vector<std::string> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Ticks at which `machine` advanced the read head of `tape`, and at which it emitted.
struct Activity {
  std::vector<std::uint64_t> reads;
  std::vector<std::uint64_t> emissions;
};

Activity activity_of(const EventLog& log, const PortRef& tape) {
  Activity a;
  for (const auto& ev : log.events) {
    if (ev.machine != tape.machine) continue;
    if (const auto* tr = std::get_if<TransitionEvent>(&ev.payload)) {
      if (std::find(tr->consumed.begin(), tr->consumed.end(), tape.index) != tr->consumed.end()) {
        a.reads.push_back(ev.tick);
      }
    } else if (std::holds_alternative<RouteEvent>(ev.payload)) {
      a.emissions.push_back(ev.tick);
    }
  }
  return a;
}

}  // namespace

AwarenessReport check_awareness(const Network& n, const RunResult& result, const ContextTrace& trace,
                                const AwarenessOptions& options) {
  AwarenessReport report;
  const auto context = sorted_unique(trace.awareness_subset);
  report.vacuous = context.empty();

  for (const auto& id : context) {
    const EvaluationVector* vec = trace.find_vector(id);
    if (!vec) throw Error(Errc::InvalidArgument, "C_A names unknown vector '" + id + "'");
    VectorAwareness va;
    va.vector = id;
    va.evaluations = vec->evaluations.size();

    const auto bound = trace.bindings_in.find(id);
    if (bound == trace.bindings_in.end()) {
      if (options.require_bindings) throw Error(Errc::UnboundVector, "vector '" + id + "' has no input binding");
      report.vectors.push_back(std::move(va));
      continue;
    }
    va.binding = bound->second;
    if (!n.find(bound->second.machine)) {
      throw Error(Errc::InvalidNetwork, "vector '" + id + "' bound to unknown machine '" + bound->second.machine + "'");
    }

    // The source is the tape's only writer, so evaluation k occupies the
    // cells right after evaluation k-1 (value symbols plus the delimiter).
    const Activity act = activity_of(result.log, bound->second);
    std::size_t end = 0;
    for (const auto& eval : vec->evaluations) {
      end += eval.value.size() + 1;
      if (act.reads.size() < end) break;
      ++va.consumed;
      const std::uint64_t completed = act.reads[end - 1];
      if (!act.emissions.empty() && act.emissions.back() >= completed) ++va.answered;
    }
    if (va.consumed < va.evaluations) va.status = VectorStatus::Unconsumed;
    else if (va.answered < va.evaluations) va.status = VectorStatus::ConsumedNoOutput;
    else va.status = VectorStatus::ConsumedAndProduced;
    report.vectors.push_back(std::move(va));
  }

  for (const auto& [port, id] : trace.bindings_out) {
    OutboundObservation obs{port, id, 0};
    for (const auto& ev : result.log.events) {
      const auto* r = std::get_if<RouteEvent>(&ev.payload);
      if (r && ev.machine == port.machine && r->port == port.index) ++obs.emissions;
    }
    report.outbound.push_back(std::move(obs));
  }

  report.aware = !report.vacuous && std::all_of(report.vectors.begin(), report.vectors.end(), [](const auto& v) {
    return v.status == VectorStatus::ConsumedAndProduced;
  });
  return report;
}

AwarenessReport run_and_check_awareness(const Network& n, const ContextTrace& trace, std::uint64_t budget,
                                        const AwarenessOptions& options) {
  const Network prepared = admit_delimiter(n, trace, options.encoding);
  const auto sources = encode_trace(trace, prepared, options.encoding);
  const RunResult result = run(prepared, ClockConfig::from_network(prepared), sources, budget);
  return check_awareness(prepared, result, trace, options);
}

EffectivenessReport check_effective(const Network& n, const ContextTrace& trace, std::span<const std::string> subset,
                                    const SimilarityConfig& config) {
  EffectivenessReport report;
  report.full = sorted_unique(trace.awareness_subset);
  report.reduced = sorted_unique(subset);
  report.threshold = config.threshold;
  for (const auto& id : report.reduced) {
    if (!std::binary_search(report.full.begin(), report.full.end(), id)) {
      throw Error(Errc::NotASubset, "'" + id + "' is not in C_A");
    }
  }
  report.degenerate = report.reduced == report.full;
  if (report.degenerate) report.warnings.push_back("C_A' equals C_A; the comparison is degenerate");

  std::set<std::string> with_full, with_reduced;
  for (const auto& [id, tape] : trace.bindings_in) {
    const bool in_context = std::binary_search(report.full.begin(), report.full.end(), id);
    if (!in_context || std::binary_search(report.reduced.begin(), report.reduced.end(), id)) with_reduced.insert(id);
    with_full.insert(id);
  }

  const Network prepared = admit_delimiter(n, trace, config.encoding);
  const auto full_sources = encode_trace(trace, prepared, config.encoding, &with_full);
  const auto reduced_sources = encode_trace(trace, prepared, config.encoding, &with_reduced);
  const ClockConfig clocks = ClockConfig::from_network(prepared);

  RunResult full_run, reduced_run;
  std::exception_ptr failure;
#pragma omp parallel sections
  {
#pragma omp section
    {
      try {
        full_run = run(prepared, clocks, full_sources, config.budget);
      } catch (...) {
#pragma omp critical(ntm_effective_failure)
        failure = std::current_exception();
      }
    }
#pragma omp section
    {
      try {
        reduced_run = run(prepared, clocks, reduced_sources, config.budget);
      } catch (...) {
#pragma omp critical(ntm_effective_failure)
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  auto symbols = [](const std::vector<SinkRecord>& stream) {
    std::vector<Symbol> out;
    out.reserve(stream.size());
    for (const auto& r : stream) out.push_back(r.symbol);
    return out;
  };
  std::vector<Symbol> all_full, all_reduced;
  for (const auto& [sink, stream] : full_run.sinks) {
    const auto a = symbols(stream);
    const auto b = symbols(reduced_run.sinks.at(sink));
    report.per_sink.push_back({sink, config.metric(a, b)});
    all_full.insert(all_full.end(), a.begin(), a.end());
    all_reduced.insert(all_reduced.end(), b.begin(), b.end());
  }
  report.score = config.metric(all_full, all_reduced);
  report.effective = report.score >= config.threshold;
  if (full_run.halt_reason == HaltReason::BudgetExhausted || reduced_run.halt_reason == HaltReason::BudgetExhausted) {
    report.warnings.push_back("a run exhausted its budget; streams may be truncated");
  }
  return report;
}

}  // namespace ntm
