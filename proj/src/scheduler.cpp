#include <algorithm>
#include <exception>

#include <omp.h>

#include "ntm/error.hpp"
#include "ntm/scheduler.hpp"

namespace ntm {

namespace {

// Below this many firing machines the fork/join costs more than it saves.
constexpr std::size_t kParallelThreshold = 64;

struct Slot {
  std::string id;
  MachineState state;
  std::uint64_t period = 1;
};

struct Feed {
  const ExternalSource* source = nullptr;
  std::vector<std::uint64_t> ticks;
  std::size_t next = 0;
  std::size_t slot = 0;

  bool pending() const noexcept { return next < ticks.size(); }
};

[[noreturn]] void throw_invalid(const ValidationReport& report) {
  std::string msg;
  for (const auto& v : report.violations) {
    if (!msg.empty()) msg += "; ";
    msg += v.message;
  }
  throw Error(Errc::InvalidNetwork, msg);
}

bool can_fire(const MachineState& m) {
  if (m.halted) return false;
  return resolve_rule(*m.spec, m.current_state, m.scanned_work(), m.scanned_inputs()).has_value();
}

}  // namespace

RunResult run(const Network& n, const ClockConfig& clocks, std::span<const ExternalSource> sources,
              std::uint64_t budget) {
  const std::vector<ExternalSource> extra(sources.begin(), sources.end());
  if (const auto report = validate_network(n, extra); !report.valid()) throw_invalid(report);
  for (const auto& [id, sigma] : clocks.speeds()) {
    if (!n.machines.contains(id)) throw Error(Errc::InvalidArgument, "speed given for unknown machine '" + id + "'");
  }

  const std::uint64_t resolution = clocks.micro_resolution();
  std::vector<Slot> slots;
  std::map<std::string, std::size_t> index;
  for (const auto& [id, spec] : n.machines) {
    index[id] = slots.size();
    slots.push_back({id, MachineState::initial(spec), clocks.period(id)});
  }

  std::vector<Feed> feeds;
  for (const auto* list : {&n.sources, &extra}) {
    for (const auto& s : *list) feeds.push_back({&s, injection_ticks(s.schedule, resolution), 0, index.at(s.to.machine)});
  }
  std::sort(feeds.begin(), feeds.end(), [](const Feed& a, const Feed& b) { return a.source->id < b.source->id; });

  const RoutingTable table(n);
  RunResult result;
  result.log.micro_resolution = resolution;
  for (const auto& s : n.sinks) result.sinks[s.id];

  const std::uint64_t end_tick = budget * resolution;
  std::vector<std::size_t> firing;
  std::vector<StepEffect> effects;
  std::vector<std::string> from_states;
  HaltReason reason = HaltReason::BudgetExhausted;
  std::uint64_t tick = 0;

  for (;; ++tick) {
    const bool all_halted =
        !slots.empty() && std::all_of(slots.begin(), slots.end(), [](const Slot& s) { return s.state.halted; });
    if (all_halted) {
      reason = HaltReason::AllHalted;
      break;
    }
    if (std::none_of(feeds.begin(), feeds.end(), [](const Feed& f) { return f.pending(); })) {
      bool any = false;
      const auto count = static_cast<std::ptrdiff_t>(slots.size());
#pragma omp parallel for reduction(|| : any) if (slots.size() >= kParallelThreshold)
      for (std::ptrdiff_t i = 0; i < count; ++i) any = any || can_fire(slots[static_cast<std::size_t>(i)].state);
      if (!any) {
        reason = HaltReason::Quiescent;
        break;
      }
    }
    if (tick >= end_tick) {
      reason = HaltReason::BudgetExhausted;
      break;
    }

    // (1) injections
    for (auto& feed : feeds) {
      if (!feed.pending() || feed.ticks[feed.next] != tick) continue;
      const auto& entry = feed.source->schedule[feed.next++];
      slots[feed.slot].state.input_tapes[feed.source->to.index].write(entry.symbol);
      result.log.events.push_back(
          {tick, feed.source->to.machine, InjectEvent{feed.source->id, feed.source->to.index, entry.symbol}});
    }

    // (2) + (3): each firing machine samples its own tapes and steps. Nothing
    // here touches another machine's state, so the loop is data-parallel.
    firing.clear();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].state.halted && tick % slots[i].period == 0) firing.push_back(i);
    }
    effects.assign(firing.size(), {});
    from_states.resize(firing.size());
    std::exception_ptr failure;
    const auto fire_count = static_cast<std::ptrdiff_t>(firing.size());
#pragma omp parallel for schedule(static) if (firing.size() >= kParallelThreshold)
    for (std::ptrdiff_t j = 0; j < fire_count; ++j) {
      const auto u = static_cast<std::size_t>(j);
      auto& state = slots[firing[u]].state;
      try {
        from_states[u] = state.current_state;
        const auto scanned = state.scanned_inputs();
        effects[u] = step_in_place(state, scanned);
      } catch (...) {
#pragma omp critical(ntm_run_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    std::map<std::string, std::vector<Emission>> emissions;
    for (std::size_t j = 0; j < firing.size(); ++j) {
      const auto& slot = slots[firing[j]];
      const auto& effect = effects[j];
      if (effect.no_rule()) {
        result.log.events.push_back({tick, slot.id, IdleEvent{slot.state.current_state}});
        continue;
      }
      result.log.events.push_back(
          {tick, slot.id, TransitionEvent{from_states[j], slot.state.current_state, *effect.rule, effect.consumed}});
      for (std::size_t k : effect.blank_reads) result.log.events.push_back({tick, slot.id, ReadBlankEvent{k}});
      if (effect.halted) result.log.events.push_back({tick, slot.id, HaltEvent{slot.state.current_state}});
      emissions.emplace(slot.id, effect.emissions);
    }

    // (4) routing, machine-id then port order
    for (auto& write : route(table, emissions)) {
      if (write.to.is_sink()) {
        result.sinks[write.to.sink()].push_back({tick, write.symbol});
      } else {
        const auto& tape = write.to.tape();
        slots[index.at(tape.machine)].state.input_tapes[tape.index].write(write.symbol);
      }
      result.log.events.push_back({tick, write.from.machine, RouteEvent{write.from.index, write.symbol, write.to}});
    }
  }

  result.halt_reason = reason;
  result.ticks = tick;
  result.log.end = Termination{reason, tick};
  for (auto& slot : slots) result.machines.emplace(slot.id, std::move(slot.state));
  return result;
}

}  // namespace ntm
