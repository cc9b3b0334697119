#include "ntm/step.hpp"

#include "ntm/error.hpp"

namespace ntm {

MachineState MachineState::initial(std::shared_ptr<const MachineSpec> spec) {
  MachineState m;
  // Tapes share the machine's tape alphabet through an aliasing pointer.
  std::shared_ptr<const Alphabet> gamma(spec, &spec->tape_alphabet);
  m.current_state = spec->start_state;
  m.work_tapes.resize(spec->num_work_tapes);
  m.input_tapes.assign(spec->num_inputs, InputTape(gamma));
  m.halted = spec->start_state == spec->halt_state;
  m.spec = std::move(spec);
  return m;
}

std::vector<Symbol> MachineState::scanned_inputs() const {
  std::vector<Symbol> out;
  out.reserve(input_tapes.size());
  for (const auto& t : input_tapes) out.push_back(t.scan());
  return out;
}

std::vector<Symbol> MachineState::scanned_work() const {
  std::vector<Symbol> out;
  out.reserve(work_tapes.size());
  for (const auto& t : work_tapes) out.push_back(t.scan());
  return out;
}

bool operator==(const MachineState& a, const MachineState& b) {
  const bool same_spec = (a.spec == nullptr) == (b.spec == nullptr) && (!a.spec || a.spec->id == b.spec->id);
  return same_spec && a.current_state == b.current_state && a.work_tapes == b.work_tapes &&
         a.input_tapes == b.input_tapes && a.halted == b.halted &&
         a.transitions_executed == b.transitions_executed;
}

StepEffect apply_rule(MachineState& m, std::size_t rule_index, std::span<const Symbol> scanned_inputs) {
  const auto& rule = m.spec->rules.at(rule_index);
  StepEffect effect;
  effect.rule = rule_index;

  for (std::size_t k = 0; k < m.work_tapes.size(); ++k) {
    m.work_tapes[k].write(rule.work_write[k]);
    m.work_tapes[k].move(rule.work_move[k]);
  }
  for (std::size_t k = 0; k < m.input_tapes.size(); ++k) {
    if (rule.input_moves[k] != HeadMove::Right) continue;
    if (scanned_inputs[k].is_blank()) {
      effect.blank_reads.push_back(k);
    } else {
      m.input_tapes[k].read();
      effect.consumed.push_back(k);
    }
  }
  effect.emissions = rule.outputs;
  m.current_state = rule.next_state;
  m.halted = m.current_state == m.spec->halt_state;
  effect.halted = m.halted;
  ++m.transitions_executed;
  return effect;
}

StepEffect step_in_place(MachineState& m, std::span<const Symbol> scanned_inputs) {
  if (m.halted) throw Error(Errc::AlreadyHalted, "machine '" + m.spec->id + "' is halted");
  if (scanned_inputs.size() != m.input_tapes.size()) {
    throw Error(Errc::InvalidArgument, "scanned input vector has wrong length");
  }
  const auto work = m.scanned_work();
  const auto rule = resolve_rule(*m.spec, m.current_state, work, scanned_inputs);
  if (!rule) {
    StepEffect idle;
    idle.emissions.assign(m.spec->num_outputs, std::nullopt);
    return idle;
  }
  return apply_rule(m, *rule, scanned_inputs);
}

StepOutcome step(const MachineState& m, std::span<const Symbol> scanned_inputs) {
  StepOutcome out{m, {}};
  out.effect = step_in_place(out.next, scanned_inputs);
  return out;
}

}  // namespace ntm
