#include "ntm/machine.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ntm/error.hpp"

namespace ntm {

char to_char(HeadMove move) { return static_cast<char>(move); }

HeadMove head_move_from_char(char c) {
  switch (c) {
    case 'L': return HeadMove::Left;
    case 'R': return HeadMove::Right;
    case 'S': return HeadMove::Stay;
    default: throw Error(Errc::FormatError, std::string("bad head move '") + c + "'");
  }
}

std::size_t TransitionRule::specificity() const {
  auto concrete = [](const SymbolPattern& p) { return p.has_value(); };
  return static_cast<std::size_t>(std::count_if(match_work.begin(), match_work.end(), concrete) +
                                  std::count_if(match_inputs.begin(), match_inputs.end(), concrete));
}

bool TransitionRule::matches(std::span<const Symbol> work, std::span<const Symbol> inputs) const {
  if (work.size() != match_work.size() || inputs.size() != match_inputs.size()) return false;
  for (std::size_t k = 0; k < work.size(); ++k) {
    if (match_work[k] && *match_work[k] != work[k]) return false;
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (match_inputs[k] && *match_inputs[k] != inputs[k]) return false;
  }
  return true;
}

namespace {

std::string pattern_key(const TransitionRule& rule) {
  std::string key = rule.state;
  auto add = [&key](const SymbolPattern& p) {
    key += '\x1f';
    key += p ? p->str() : std::string(Symbol::kWildcardToken);
  };
  for (const auto& p : rule.match_work) add(p);
  key += '\x1e';
  for (const auto& p : rule.match_inputs) add(p);
  return key;
}

}  // namespace

std::vector<std::string> machine_problems(const MachineSpec& spec) {
  std::vector<std::string> problems;
  auto report = [&problems](std::string msg) { problems.push_back(std::move(msg)); };
  const std::string who = "machine '" + spec.id + "': ";

  const bool id_ok = !spec.id.empty() && std::all_of(spec.id.begin(), spec.id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
  if (!id_ok) report(who + "id must be non-empty [A-Za-z0-9_-]");
  if (!spec.states.contains(spec.start_state)) report(who + "start state '" + spec.start_state + "' not in Q");
  if (!spec.states.contains(spec.halt_state)) report(who + "halt state '" + spec.halt_state + "' not in Q");
  if (!spec.input_alphabet.contains(Symbol::blank())) report(who + "blank symbol missing from input alphabet");
  for (const auto& s : spec.input_alphabet) {
    if (!spec.tape_alphabet.contains(s)) report(who + "input symbol '" + s.str() + "' missing from tape alphabet");
  }
  if (spec.num_work_tapes == 0) report(who + "needs at least one working tape");
  if (spec.speed == 0) report(who + "speed must be positive");

  std::set<std::size_t> fed_ports, fed_tapes;
  for (const auto& link : spec.feedback) {
    if (link.port >= spec.num_outputs) report(who + "feedback port " + std::to_string(link.port) + " out of range");
    if (link.tape >= spec.num_inputs) report(who + "feedback tape " + std::to_string(link.tape) + " out of range");
    if (!fed_ports.insert(link.port).second) report(who + "feedback port " + std::to_string(link.port) + " used twice");
    if (!fed_tapes.insert(link.tape).second) report(who + "feedback tape " + std::to_string(link.tape) + " fed twice");
  }

  auto in_gamma = [&spec](const Symbol& s) { return spec.tape_alphabet.contains(s); };
  std::map<std::string, std::size_t> seen_patterns;
  for (std::size_t r = 0; r < spec.rules.size(); ++r) {
    const auto& rule = spec.rules[r];
    const std::string where = who + "rule " + std::to_string(r) + ": ";
    if (!spec.states.contains(rule.state)) report(where + "state '" + rule.state + "' not in Q");
    if (!spec.states.contains(rule.next_state)) report(where + "next state '" + rule.next_state + "' not in Q");
    if (rule.state == spec.halt_state) report(where + "halt state has outgoing rule");
    if (rule.match_work.size() != spec.num_work_tapes || rule.work_write.size() != spec.num_work_tapes ||
        rule.work_move.size() != spec.num_work_tapes) {
      report(where + "working-tape arity mismatch");
    }
    if (rule.match_inputs.size() != spec.num_inputs || rule.input_moves.size() != spec.num_inputs) {
      report(where + "input arity mismatch");
    }
    if (rule.outputs.size() != spec.num_outputs) report(where + "output arity mismatch");
    for (const auto& p : rule.match_work) {
      if (p && !in_gamma(*p)) report(where + "work symbol '" + p->str() + "' not in tape alphabet");
    }
    for (const auto& s : rule.work_write) {
      if (!in_gamma(s)) report(where + "written symbol '" + s.str() + "' not in tape alphabet");
    }
    for (std::size_t k = 0; k < rule.match_inputs.size(); ++k) {
      const auto& p = rule.match_inputs[k];
      if (p && !in_gamma(*p)) report(where + "input symbol '" + p->str() + "' not in tape alphabet");
      if (k < rule.input_moves.size()) {
        const HeadMove move = rule.input_moves[k];
        if (move == HeadMove::Left) report(where + "input head " + std::to_string(k) + " may not move left");
        if (move == HeadMove::Right && p && p->is_blank()) {
          report(where + "input head " + std::to_string(k) + " moves right over blank");
        }
      }
    }
    for (const auto& out : rule.outputs) {
      if (!out) continue;
      if (out->is_blank()) report(where + "emits blank");
      else if (!in_gamma(*out)) report(where + "emitted symbol '" + out->str() + "' not in tape alphabet");
    }
    auto [it, inserted] = seen_patterns.emplace(pattern_key(rule), r);
    if (!inserted) {
      report(where + "same match pattern as rule " + std::to_string(it->second) + " (nondeterministic)");
    }
  }
  return problems;
}

void validate_machine(const MachineSpec& spec) {
  const auto problems = machine_problems(spec);
  if (problems.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i) os << "; ";
    os << problems[i];
  }
  throw Error(Errc::InvalidMachine, os.str());
}

std::optional<std::size_t> resolve_rule(const MachineSpec& spec, std::string_view state,
                                        std::span<const Symbol> work,
                                        std::span<const Symbol> inputs) {
  std::optional<std::size_t> best;
  std::size_t best_specificity = 0;
  for (std::size_t r = 0; r < spec.rules.size(); ++r) {
    const auto& rule = spec.rules[r];
    if (rule.state != state || !rule.matches(work, inputs)) continue;
    const std::size_t s = rule.specificity();
    if (!best || s > best_specificity) {
      best = r;
      best_specificity = s;
    }
  }
  return best;
}

Alphabet emitted_symbols(const MachineSpec& spec, std::size_t port) {
  Alphabet out;
  for (const auto& rule : spec.rules) {
    if (port < rule.outputs.size() && rule.outputs[port]) out.insert(*rule.outputs[port]);
  }
  return out;
}

}  // namespace ntm
