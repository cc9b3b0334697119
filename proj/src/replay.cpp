#include <algorithm>
#include <set>

#include "ntm/error.hpp"
#include "ntm/scheduler.hpp"

namespace ntm {

namespace {

[[noreturn]] void mismatch(std::size_t at, const std::string& what) {
  throw Error(Errc::LogMismatch, "event " + std::to_string(at) + ": " + what);
}

}  // namespace

RunResult replay(const EventLog& log, const Network& n) { return replay(log, n, ClockConfig::from_network(n)); }

RunResult replay(const EventLog& log, const Network& n, const ClockConfig& clocks) {
  if (log.micro_resolution != clocks.micro_resolution()) {
    mismatch(0, "log resolution " + std::to_string(log.micro_resolution) + " does not match the clocks (" +
                    std::to_string(clocks.micro_resolution()) + ")");
  }
  RunResult result;
  result.log = log;
  std::map<std::string, std::uint64_t> period;
  for (const auto& [id, spec] : n.machines) {
    result.machines.emplace(id, MachineState::initial(spec));
    try {
      period[id] = clocks.period(id);
    } catch (const Error&) {
      mismatch(0, "no clock for machine '" + id + "'");
    }
  }
  for (const auto& s : n.sinks) result.sinks[s.id];

  const RoutingTable table(n);
  std::set<PortRef> machine_written;
  for (const auto& [port, dest] : table.entries()) {
    if (!dest.is_sink()) machine_written.insert(dest.tape());
  }

  // Per-tick bookkeeping: emissions still waiting for their route events,
  // read-blank and halt events owed by this tick's transitions, and which
  // machines have fired.
  std::map<PortRef, Symbol> unrouted;
  std::map<std::string, std::vector<std::size_t>> blank_reads;
  std::set<std::string> halts_owed;
  std::set<std::string> fired;
  std::uint64_t tick = 0;

  auto close_tick = [&](std::uint64_t t, std::size_t at) {
    if (!unrouted.empty()) mismatch(at, "emission from " + unrouted.begin()->first.str() + " never routed");
    for (const auto& [id, reads] : blank_reads) {
      if (!reads.empty()) mismatch(at, "missing read-blank event for '" + id + "'");
    }
    if (!halts_owed.empty()) mismatch(at, "missing halt event for '" + *halts_owed.begin() + "'");
    for (const auto& [id, m] : result.machines) {
      if (t % period.at(id) == 0 && !m.halted && !fired.contains(id)) {
        mismatch(at, "machine '" + id + "' did not fire at tick " + std::to_string(t));
      }
    }
    blank_reads.clear();
    fired.clear();
  };
  auto close_through = [&](std::uint64_t from, std::uint64_t to, std::size_t at) {
    for (std::uint64_t t = from; t < to; ++t) close_tick(t, at);
  };

  for (std::size_t at = 0; at < log.events.size(); ++at) {
    const Event& ev = log.events[at];
    if (ev.tick < tick) mismatch(at, "tick goes backwards");
    if (ev.tick > tick) {
      close_through(tick, ev.tick, at);
      tick = ev.tick;
    }
    const auto found = result.machines.find(ev.machine);
    if (found == result.machines.end()) mismatch(at, "unknown machine '" + ev.machine + "'");
    MachineState& m = found->second;
    const MachineSpec& spec = *m.spec;

    auto fire = [&] {
      if (tick % period.at(ev.machine) != 0) mismatch(at, "machine '" + ev.machine + "' is not due at this tick");
      if (!fired.insert(ev.machine).second) mismatch(at, "machine '" + ev.machine + "' fires twice in one tick");
    };

    switch (ev.kind()) {
      case EventKind::Inject: {
        const auto& inj = std::get<InjectEvent>(ev.payload);
        const PortRef tape{ev.machine, inj.tape};
        if (inj.tape >= spec.num_inputs) mismatch(at, "no input tape " + tape.str());
        if (machine_written.contains(tape)) mismatch(at, "injection into machine-written tape " + tape.str());
        try {
          m.input_tapes[inj.tape].write(inj.symbol);
        } catch (const Error& e) {
          mismatch(at, e.what());
        }
        break;
      }
      case EventKind::Idle: {
        const auto& idle = std::get<IdleEvent>(ev.payload);
        fire();
        if (m.halted || m.current_state != idle.state) mismatch(at, "idle event disagrees with machine state");
        if (resolve_rule(spec, m.current_state, m.scanned_work(), m.scanned_inputs())) {
          mismatch(at, "machine '" + ev.machine + "' idles although a rule applies");
        }
        break;
      }
      case EventKind::Transition: {
        const auto& tr = std::get<TransitionEvent>(ev.payload);
        fire();
        if (m.halted) mismatch(at, "transition of halted machine '" + ev.machine + "'");
        if (m.current_state != tr.from) mismatch(at, "machine '" + ev.machine + "' is not in state " + tr.from);
        const auto scanned = m.scanned_inputs();
        const auto rule = resolve_rule(spec, m.current_state, m.scanned_work(), scanned);
        if (!rule || *rule != tr.rule) mismatch(at, "rule " + std::to_string(tr.rule) + " does not fire here");
        const StepEffect effect = apply_rule(m, tr.rule, scanned);
        if (effect.consumed != tr.consumed || m.current_state != tr.to) {
          mismatch(at, "transition effects disagree with the log");
        }
        blank_reads[ev.machine] = effect.blank_reads;
        if (effect.halted) halts_owed.insert(ev.machine);
        for (std::size_t p = 0; p < effect.emissions.size(); ++p) {
          const PortRef port{ev.machine, p};
          if (effect.emissions[p] && table.find(port)) unrouted.emplace(port, *effect.emissions[p]);
        }
        break;
      }
      case EventKind::ReadBlank: {
        const auto& rb = std::get<ReadBlankEvent>(ev.payload);
        auto& reads = blank_reads[ev.machine];
        const auto it = std::find(reads.begin(), reads.end(), rb.tape);
        if (it == reads.end()) mismatch(at, "unexpected read-blank on tape " + std::to_string(rb.tape));
        reads.erase(it);
        break;
      }
      case EventKind::Halt: {
        const auto& h = std::get<HaltEvent>(ev.payload);
        if (!halts_owed.erase(ev.machine) || m.current_state != h.state) {
          mismatch(at, "halt event without a halting transition");
        }
        break;
      }
      case EventKind::Route: {
        const auto& r = std::get<RouteEvent>(ev.payload);
        const PortRef port{ev.machine, r.port};
        const auto pending = unrouted.find(port);
        if (pending == unrouted.end() || pending->second != r.symbol) {
          mismatch(at, "route of '" + r.symbol.str() + "' from " + port.str() + " without matching emission");
        }
        const Destination* dest = table.find(port);
        if (!dest || !(*dest == r.to)) mismatch(at, "route destination disagrees with the network");
        unrouted.erase(pending);
        if (r.to.is_sink()) {
          result.sinks[r.to.sink()].push_back({ev.tick, r.symbol});
        } else {
          try {
            result.machines.at(r.to.tape().machine).input_tapes.at(r.to.tape().index).write(r.symbol);
          } catch (const std::exception& e) {
            mismatch(at, e.what());
          }
        }
        break;
      }
    }
  }

  if (log.end) {
    const std::uint64_t end = log.end->tick;
    if (!log.events.empty() && end <= tick) mismatch(log.events.size(), "end tick does not follow the last event");
    close_through(log.events.empty() ? 0 : tick, end, log.events.size());
    result.halt_reason = log.end->reason;
    result.ticks = end;
  } else {
    result.halt_reason = HaltReason::BudgetExhausted;
    result.ticks = log.events.empty() ? 0 : tick + 1;
  }
  return result;
}

}  // namespace ntm
