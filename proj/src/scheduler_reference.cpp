// Deliberately naive: plain strings for cells, linear scans for rule lookup
// and routing. Shares no tape, matching or routing code with run().

#include <algorithm>

#include "ntm/error.hpp"
#include "ntm/scheduler.hpp"

namespace ntm {

namespace {

const std::string kBlank = "_";

struct RefInput {
  std::vector<std::string> cells;
  std::size_t read = 0;

  const std::string& scan() const { return read < cells.size() ? cells[read] : kBlank; }
};

struct RefWork {
  std::vector<std::string> cells;
  std::size_t head = 0;

  std::string scan() const { return head < cells.size() ? cells[head] : kBlank; }
};

struct RefMachine {
  std::string id;
  const MachineSpec* spec = nullptr;
  std::string state;
  std::vector<RefWork> work;
  std::vector<RefInput> inputs;
  bool halted = false;
  std::uint64_t count = 0;
  std::uint64_t period = 1;
};

bool pattern_ok(const SymbolPattern& p, const std::string& scanned) { return !p || p->str() == scanned; }

// -1 when nothing matches.
long find_rule(const RefMachine& m) {
  long best = -1;
  std::size_t best_score = 0;
  for (std::size_t r = 0; r < m.spec->rules.size(); ++r) {
    const TransitionRule& rule = m.spec->rules[r];
    if (rule.state != m.state) continue;
    bool ok = true;
    std::size_t score = 0;
    for (std::size_t k = 0; ok && k < m.work.size(); ++k) {
      ok = pattern_ok(rule.match_work[k], m.work[k].scan());
      if (rule.match_work[k]) ++score;
    }
    for (std::size_t k = 0; ok && k < m.inputs.size(); ++k) {
      ok = pattern_ok(rule.match_inputs[k], m.inputs[k].scan());
      if (rule.match_inputs[k]) ++score;
    }
    if (!ok) continue;
    if (best < 0 || score > best_score) {
      best = static_cast<long>(r);
      best_score = score;
    }
  }
  return best;
}

void put(RefInput& tape, const MachineSpec& owner, const Symbol& s) {
  if (s.is_blank()) throw Error(Errc::BlankWriteRejected, "blank write");
  if (!owner.tape_alphabet.contains(s)) throw Error(Errc::SymbolNotInAlphabet, "'" + s.str() + "'");
  tape.cells.push_back(s.str());
}

RefMachine* lookup(std::vector<RefMachine>& ms, const std::string& id) {
  for (auto& m : ms) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

MachineState to_state(const RefMachine& m, const std::shared_ptr<const MachineSpec>& spec) {
  MachineState out = MachineState::initial(spec);
  std::shared_ptr<const Alphabet> gamma(spec, &spec->tape_alphabet);
  out.current_state = m.state;
  out.halted = m.halted;
  out.transitions_executed = m.count;
  for (std::size_t k = 0; k < m.work.size(); ++k) {
    std::vector<Symbol> cells;
    for (const auto& c : m.work[k].cells) cells.emplace_back(c);
    out.work_tapes[k] = WorkTape(std::move(cells), m.work[k].head);
  }
  for (std::size_t k = 0; k < m.inputs.size(); ++k) {
    std::vector<Symbol> cells;
    for (const auto& c : m.inputs[k].cells) cells.emplace_back(c);
    out.input_tapes[k] = InputTape::from_parts(gamma, std::move(cells), m.inputs[k].read);
  }
  return out;
}

}  // namespace

RunResult run_reference(const Network& n, const ClockConfig& clocks, std::span<const ExternalSource> sources,
                        std::uint64_t budget) {
  std::vector<ExternalSource> all(n.sources.begin(), n.sources.end());
  all.insert(all.end(), sources.begin(), sources.end());
  const std::vector<ExternalSource> extra(sources.begin(), sources.end());
  const auto report = validate_network(n, extra);
  if (!report.valid()) {
    std::string msg;
    for (const auto& v : report.violations) msg += (msg.empty() ? "" : "; ") + v.message;
    throw Error(Errc::InvalidNetwork, msg);
  }

  std::uint64_t resolution = 1;
  for (const auto& [id, spec] : n.machines) {
    const unsigned sigma = clocks.speed(id);
    std::uint64_t a = resolution, b = sigma;
    while (b != 0) {
      const auto t = a % b;
      a = b;
      b = t;
    }
    resolution = resolution / a * sigma;
  }
  for (const auto& [id, sigma] : clocks.speeds()) {
    if (n.find(id) == nullptr) throw Error(Errc::InvalidArgument, "speed given for unknown machine '" + id + "'");
  }

  std::vector<RefMachine> ms;
  for (const auto& [id, spec] : n.machines) {
    RefMachine m;
    m.id = id;
    m.spec = spec.get();
    m.state = spec->start_state;
    m.work.resize(spec->num_work_tapes);
    m.inputs.resize(spec->num_inputs);
    m.halted = spec->start_state == spec->halt_state;
    m.period = resolution / clocks.speed(id);
    ms.push_back(std::move(m));
  }

  // Sources in id order, each with a cursor and the tick of its last injection.
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::vector<std::size_t> cursor(all.size(), 0);
  std::vector<std::uint64_t> last(all.size(), 0);

  RunResult result;
  result.log.micro_resolution = resolution;
  for (const auto& s : n.sinks) result.sinks[s.id] = {};

  std::uint64_t tick = 0;
  HaltReason reason;
  while (true) {
    bool everyone_halted = !ms.empty();
    for (const auto& m : ms) everyone_halted = everyone_halted && m.halted;
    if (everyone_halted) {
      reason = HaltReason::AllHalted;
      break;
    }
    bool pending = false;
    for (std::size_t s = 0; s < all.size(); ++s) pending = pending || cursor[s] < all[s].schedule.size();
    bool live = pending;
    for (std::size_t i = 0; !live && i < ms.size(); ++i) live = !ms[i].halted && find_rule(ms[i]) >= 0;
    if (!live) {
      reason = HaltReason::Quiescent;
      break;
    }
    if (tick >= budget * resolution) {
      reason = HaltReason::BudgetExhausted;
      break;
    }

    for (std::size_t s = 0; s < all.size(); ++s) {
      if (cursor[s] >= all[s].schedule.size()) continue;
      std::uint64_t due = all[s].schedule[cursor[s]].time * resolution;
      if (cursor[s] > 0 && due <= last[s]) due = last[s] + 1;
      if (due != tick) continue;
      const auto& entry = all[s].schedule[cursor[s]];
      RefMachine* target = lookup(ms, all[s].to.machine);
      put(target->inputs[all[s].to.index], *target->spec, entry.symbol);
      result.log.events.push_back({tick, target->id, InjectEvent{all[s].id, all[s].to.index, entry.symbol}});
      last[s] = tick;
      ++cursor[s];
    }

    struct Pending {
      std::string machine;
      std::vector<Emission> outputs;
    };
    std::vector<Pending> out;
    for (auto& m : ms) {
      if (m.halted || tick % m.period != 0) continue;
      const long r = find_rule(m);
      if (r < 0) {
        result.log.events.push_back({tick, m.id, IdleEvent{m.state}});
        continue;
      }
      const TransitionRule& rule = m.spec->rules[static_cast<std::size_t>(r)];
      TransitionEvent ev{m.state, rule.next_state, static_cast<std::size_t>(r), {}};
      std::vector<std::size_t> blanks;
      for (std::size_t k = 0; k < m.work.size(); ++k) {
        RefWork& w = m.work[k];
        if (w.head >= w.cells.size()) w.cells.resize(w.head + 1, kBlank);
        w.cells[w.head] = rule.work_write[k].str();
        if (rule.work_move[k] == HeadMove::Right) ++w.head;
        if (rule.work_move[k] == HeadMove::Left && w.head > 0) --w.head;
      }
      for (std::size_t k = 0; k < m.inputs.size(); ++k) {
        if (rule.input_moves[k] != HeadMove::Right) continue;
        if (m.inputs[k].read < m.inputs[k].cells.size()) {
          ++m.inputs[k].read;
          ev.consumed.push_back(k);
        } else {
          blanks.push_back(k);
        }
      }
      m.state = rule.next_state;
      m.halted = m.state == m.spec->halt_state;
      ++m.count;
      result.log.events.push_back({tick, m.id, ev});
      for (auto k : blanks) result.log.events.push_back({tick, m.id, ReadBlankEvent{k}});
      if (m.halted) result.log.events.push_back({tick, m.id, HaltEvent{m.state}});
      out.push_back({m.id, rule.outputs});
    }

    for (const auto& p : out) {
      for (std::size_t port = 0; port < p.outputs.size(); ++port) {
        if (!p.outputs[port]) continue;
        const Symbol& sym = *p.outputs[port];
        bool delivered = false;
        for (const auto& c : n.connections) {
          if (c.from.machine != p.machine || c.from.index != port) continue;
          RefMachine* dst = lookup(ms, c.to.machine);
          put(dst->inputs[c.to.index], *dst->spec, sym);
          result.log.events.push_back({tick, p.machine, RouteEvent{port, sym, Destination{c.to}}});
          delivered = true;
          break;
        }
        for (std::size_t s = 0; !delivered && s < n.sinks.size(); ++s) {
          if (n.sinks[s].from.machine != p.machine || n.sinks[s].from.index != port) continue;
          result.sinks[n.sinks[s].id].push_back({tick, sym});
          result.log.events.push_back({tick, p.machine, RouteEvent{port, sym, Destination{n.sinks[s].id}}});
          delivered = true;
        }
        RefMachine* self = lookup(ms, p.machine);
        for (std::size_t f = 0; !delivered && f < self->spec->feedback.size(); ++f) {
          const auto& link = self->spec->feedback[f];
          if (link.port != port) continue;
          put(self->inputs[link.tape], *self->spec, sym);
          result.log.events.push_back(
              {tick, p.machine, RouteEvent{port, sym, Destination{PortRef{p.machine, link.tape}}}});
          delivered = true;
        }
      }
    }
    ++tick;
  }

  result.halt_reason = reason;
  result.ticks = tick;
  result.log.end = Termination{reason, tick};
  for (const auto& m : ms) result.machines.emplace(m.id, to_state(m, n.machines.at(m.id)));
  return result;
}

}  // namespace ntm
