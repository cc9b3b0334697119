#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntm/machine.hpp"
#include "ntm/tape.hpp"

namespace ntm {

/// Runtime configuration of one machine. `halted` holds exactly when
/// `current_state` is the halt state.
struct MachineState {
  std::shared_ptr<const MachineSpec> spec;
  std::string current_state;
  std::vector<WorkTape> work_tapes;
  std::vector<InputTape> input_tapes;
  bool halted = false;
  std::uint64_t transitions_executed = 0;

  static MachineState initial(std::shared_ptr<const MachineSpec> spec);

  /// Symbols under each input tape's read head.
  std::vector<Symbol> scanned_inputs() const;
  std::vector<Symbol> scanned_work() const;

  /// Specs compare by id; everything else by value.
  friend bool operator==(const MachineState& a, const MachineState& b);
};

/// What one transition did, besides changing the state.
struct StepEffect {
  std::optional<std::size_t> rule;  // empty: no rule matched, the machine idled
  std::vector<Emission> emissions;  // length o
  std::vector<std::size_t> consumed;     // input tapes whose read head advanced
  std::vector<std::size_t> blank_reads;  // input tapes asked to move right over blank
  bool halted = false;

  bool no_rule() const noexcept { return !rule.has_value(); }
};

struct StepOutcome {
  MachineState next;
  StepEffect effect;
};

/// One transition. `scanned_inputs` must be the symbols under each input read
/// head. An unmatched configuration idles the machine (no_rule).
/// Throws AlreadyHalted, or InvalidArgument when the scanned vector is wrong.
StepOutcome step(const MachineState& m, std::span<const Symbol> scanned_inputs);

/// In-place form of step().
StepEffect step_in_place(MachineState& m, std::span<const Symbol> scanned_inputs);

/// Applies rule `rule_index` unconditionally (the caller has checked it
/// matches).
StepEffect apply_rule(MachineState& m, std::size_t rule_index, std::span<const Symbol> scanned_inputs);

}  // namespace ntm
