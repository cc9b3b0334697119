#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ntm/symbol.hpp"

namespace ntm {

enum class HeadMove : char { Left = 'L', Right = 'R', Stay = 'S' };

char to_char(HeadMove move);
HeadMove head_move_from_char(char c);

/// A match pattern for one scanned cell. An empty optional is the `*` wildcard.
using SymbolPattern = std::optional<Symbol>;

/// An output entry: a symbol to emit (head-1 of the peer tape prints it and
/// advances) or nothing (the port stands still).
using Emission = std::optional<Symbol>;

struct TransitionRule {
  std::string state;
  std::vector<SymbolPattern> match_work;    // one per working tape
  std::vector<SymbolPattern> match_inputs;  // one per input tape
  std::string next_state;
  std::vector<Symbol> work_write;
  std::vector<HeadMove> work_move;
  std::vector<HeadMove> input_moves;  // R or S only
  std::vector<Emission> outputs;      // one per output port

  /// Number of concrete (non-wildcard) match fields. Higher wins.
  std::size_t specificity() const;

  bool matches(std::span<const Symbol> work, std::span<const Symbol> inputs) const;

  friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

/// An output port wired back to one of the machine's own input tapes.
struct FeedbackLink {
  std::size_t port = 0;
  std::size_t tape = 0;

  friend bool operator==(const FeedbackLink&, const FeedbackLink&) = default;
};

/// Static description of one networked machine: states, alphabets, arities
/// and the transition table. `speed` is the number of transitions the machine
/// performs per global time step.
struct MachineSpec {
  std::string id;
  std::set<std::string> states;
  Alphabet input_alphabet;
  Alphabet tape_alphabet;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  std::size_t num_work_tapes = 1;
  std::vector<TransitionRule> rules;
  std::string start_state;
  std::string halt_state;
  unsigned speed = 1;
  std::vector<FeedbackLink> feedback;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

/// Every invariant violation of `spec`, one message per problem. Empty when
/// the machine is well formed.
std::vector<std::string> machine_problems(const MachineSpec& spec);

/// Throws Error(InvalidMachine) listing all problems.
void validate_machine(const MachineSpec& spec);

/// Picks the rule that fires for the given configuration: the matching rule
/// with the highest specificity, earliest in the rule list on ties.
std::optional<std::size_t> resolve_rule(const MachineSpec& spec, std::string_view state,
                                        std::span<const Symbol> work,
                                        std::span<const Symbol> inputs);

/// The symbols `spec` may ever emit on `port`.
Alphabet emitted_symbols(const MachineSpec& spec, std::size_t port);

}  // namespace ntm
