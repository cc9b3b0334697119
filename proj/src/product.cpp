#include "ntm/product.hpp"

#include <functional>
#include <set>
#include <vector>

#include "ntm/error.hpp"

namespace ntm {

MachineSpec empty_producer() {
  MachineSpec h;
  h.id = "none";
  h.states = {"h"};
  h.input_alphabet = {Symbol::blank()};
  h.tape_alphabet = {Symbol::blank()};
  h.start_state = "h";
  h.halt_state = "h";
  return h;
}

std::string product_state(const std::string& qm, const std::string& qh) { return qm + "|" + qh; }

namespace {

// Calls `visit` with every vector whose k-th entry is drawn from choices[k].
void for_each_combination(const std::vector<std::vector<Symbol>>& choices,
                          const std::function<void(const std::vector<Symbol>&)>& visit) {
  std::vector<Symbol> current(choices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == choices.size()) {
      visit(current);
      return;
    }
    for (const auto& s : choices[k]) {
      current[k] = s;
      rec(k + 1);
    }
  };
  rec(0);
}

}  // namespace

MachineSpec compose_product(const MachineSpec& m, const MachineSpec& h, const ProductWiring& wiring) {
  validate_machine(m);
  validate_machine(h);
  auto incompatible = [](const std::string& msg) { throw Error(Errc::IncompatibleWiring, msg); };
  if (h.num_inputs != 0) incompatible("producer '" + h.id + "' has input tapes");
  if (!m.feedback.empty() || !h.feedback.empty()) incompatible("machines with feedback links cannot be composed");
  if (h.num_outputs > 0 && m.speed != h.speed) incompatible("producer and consumer speeds differ");

  std::set<std::size_t> used_tapes;
  for (const auto& [port, tape] : wiring) {
    if (port >= h.num_outputs) incompatible("producer has no output port " + std::to_string(port));
    if (tape >= m.num_inputs) incompatible("consumer has no input tape " + std::to_string(tape));
    if (!used_tapes.insert(tape).second) incompatible("input tape " + std::to_string(tape) + " wired twice");
    for (const auto& s : emitted_symbols(h, port)) {
      if (!m.tape_alphabet.contains(s)) incompatible("producer emits '" + s.str() + "' outside the consumer alphabet");
    }
  }
  for (std::size_t p = 0; p < h.num_outputs; ++p) {
    if (!wiring.contains(p)) incompatible("producer output port " + std::to_string(p) + " is not wired");
  }

  MachineSpec q;
  q.id = m.id + "-x-" + h.id;
  for (const auto& qm : m.states) {
    for (const auto& qh : h.states) q.states.insert(product_state(qm, qh));
  }
  q.input_alphabet = m.input_alphabet;
  q.tape_alphabet = m.tape_alphabet;
  q.tape_alphabet.insert(h.tape_alphabet.begin(), h.tape_alphabet.end());
  q.num_inputs = m.num_inputs;
  q.num_outputs = m.num_outputs + h.num_outputs;
  q.num_work_tapes = m.num_work_tapes + h.num_work_tapes;
  q.start_state = product_state(m.start_state, h.start_state);
  q.halt_state = product_state(m.halt_state, h.halt_state);
  q.speed = m.speed;
  for (const auto& [port, tape] : wiring) q.feedback.push_back({m.num_outputs + port, tape});

  // Symbols each scanned cell can hold.
  const std::vector<Symbol> gamma_m(m.tape_alphabet.begin(), m.tape_alphabet.end());
  const std::vector<Symbol> gamma_h(h.tape_alphabet.begin(), h.tape_alphabet.end());
  std::vector<std::vector<Symbol>> work_choices(m.num_work_tapes, gamma_m);
  work_choices.insert(work_choices.end(), h.num_work_tapes, gamma_h);
  // Wired tapes hold what the producer prints; the rest stay open to outside feeds.
  const std::vector<Symbol> sigma_m(m.input_alphabet.begin(), m.input_alphabet.end());
  std::vector<std::vector<Symbol>> input_choices(m.num_inputs, sigma_m);
  for (const auto& [port, tape] : wiring) {
    input_choices[tape] = {Symbol::blank()};
    for (const auto& s : emitted_symbols(h, port)) input_choices[tape].push_back(s);
  }
  auto scan_choices = work_choices;
  scan_choices.insert(scan_choices.end(), input_choices.begin(), input_choices.end());

  const std::vector<Emission> m_silent(m.num_outputs), h_silent(h.num_outputs);
  for (const auto& qm : m.states) {
    for (const auto& qh : h.states) {
      if (qm == m.halt_state && qh == h.halt_state) continue;
      for_each_combination(scan_choices, [&](const std::vector<Symbol>& scan) {
        const std::span<const Symbol> all(scan);
        const auto w_m = all.subspan(0, m.num_work_tapes);
        const auto w_h = all.subspan(m.num_work_tapes, h.num_work_tapes);
        const auto inputs = all.subspan(m.num_work_tapes + h.num_work_tapes);

        std::optional<std::size_t> rm, rh;
        if (qm != m.halt_state) rm = resolve_rule(m, qm, w_m, inputs);
        if (qh != h.halt_state) rh = resolve_rule(h, qh, w_h, {});
        if (!rm && !rh) return;

        TransitionRule rule;
        rule.state = product_state(qm, qh);
        for (const auto& s : all.subspan(0, q.num_work_tapes)) rule.match_work.emplace_back(s);
        for (const auto& s : inputs) rule.match_inputs.emplace_back(s);

        const TransitionRule* a = rm ? &m.rules[*rm] : nullptr;
        const TransitionRule* b = rh ? &h.rules[*rh] : nullptr;
        rule.next_state = product_state(a ? a->next_state : qm, b ? b->next_state : qh);
        for (std::size_t k = 0; k < m.num_work_tapes; ++k) {
          rule.work_write.push_back(a ? a->work_write[k] : w_m[k]);
          rule.work_move.push_back(a ? a->work_move[k] : HeadMove::Stay);
        }
        for (std::size_t k = 0; k < h.num_work_tapes; ++k) {
          rule.work_write.push_back(b ? b->work_write[k] : w_h[k]);
          rule.work_move.push_back(b ? b->work_move[k] : HeadMove::Stay);
        }
        for (std::size_t k = 0; k < m.num_inputs; ++k) {
          // Right over blank stands still anyway; S keeps the concrete rule legal.
          const bool advance = a && a->input_moves[k] == HeadMove::Right && !inputs[k].is_blank();
          rule.input_moves.push_back(advance ? HeadMove::Right : HeadMove::Stay);
        }
        const auto& out_m = a ? a->outputs : m_silent;
        const auto& out_h = b ? b->outputs : h_silent;
        rule.outputs = out_m;
        rule.outputs.insert(rule.outputs.end(), out_h.begin(), out_h.end());
        q.rules.push_back(std::move(rule));
      });
    }
  }
  return q;
}

}  // namespace ntm
