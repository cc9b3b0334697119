#include <doctest.h>

#include <deque>
#include <random>

#include "ntm/error.hpp"
#include "ntm/machine.hpp"
#include "ntm/step.hpp"
#include "ntm/tape.hpp"

using namespace ntm;

namespace {

Symbol S(const char* t) { return Symbol(t); }

std::shared_ptr<const Alphabet> abc() {
  return std::make_shared<const Alphabet>(Alphabet{Symbol::blank(), S("a"), S("b"), S("c")});
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::InvalidArgument;
}

// One input, one output, one working tape.
MachineSpec copier() {
  MachineSpec m;
  m.id = "copier";
  m.states = {"q0", "q1", "qf"};
  m.input_alphabet = {Symbol::blank(), S("a"), S("b")};
  m.tape_alphabet = {Symbol::blank(), S("a"), S("b"), S("x")};
  m.num_inputs = 1;
  m.num_outputs = 1;
  m.start_state = "q0";
  m.halt_state = "qf";
  TransitionRule r;
  r.state = "q0";
  r.match_work = {Symbol::blank()};
  r.match_inputs = {S("a")};
  r.next_state = "q1";
  r.work_write = {S("x")};
  r.work_move = {HeadMove::Right};
  r.input_moves = {HeadMove::Right};
  r.outputs = {S("a")};
  m.rules.push_back(r);
  return m;
}

}  // namespace

TEST_CASE("symbols") {
  CHECK(Symbol().is_blank());
  CHECK(Symbol::blank().str() == "_");
  CHECK(S("a") == S("a"));
  CHECK(S("a") != S("ab"));
  for (const char* bad : {"", " ", "a b", "*", "\t"}) {
    CHECK(code_of([&] { Symbol s(bad); }) == Errc::InvalidSymbol);
  }
}

TEST_CASE("input tape writes") {
  InputTape t(abc());
  t.write(S("a"));
  CHECK(t.write_head() == 1);
  CHECK(t.read_head() == 0);
  CHECK(t.cells()[0] == S("a"));
  t.write(S("b"));
  CHECK(t.write_head() == 2);
  CHECK(t.cells()[1] == S("b"));
  CHECK(code_of([&] { t.write(Symbol::blank()); }) == Errc::BlankWriteRejected);
  CHECK(code_of([&] { t.write(S("z")); }) == Errc::SymbolNotInAlphabet);
  CHECK(t.write_head() == 2);
}

TEST_CASE("input tape reads") {
  InputTape fresh(abc());
  CHECK(fresh.read().is_blank());
  CHECK(fresh.read_head() == 0);

  InputTape t(abc());
  t.write(S("a"));
  t.write(S("b"));
  CHECK(t.read() == S("a"));
  CHECK(t.read() == S("b"));
  CHECK(t.read_head() == 2);

  InputTape u(abc());
  u.write(S("a"));
  u.read();
  CHECK(u.read().is_blank());
  CHECK(u.read_head() == 1);
}

TEST_CASE("input tape laws over random interleavings") {
  std::mt19937_64 rng(7);
  const std::vector<Symbol> pool{S("a"), S("b"), S("c")};
  for (int trial = 0; trial < 500; ++trial) {
    InputTape t(abc());
    std::deque<Symbol> model;
    std::vector<Symbol> written, read;
    std::size_t last_w = 0, last_r = 0;
    const int ops = std::uniform_int_distribution<int>(1, 60)(rng);
    for (int k = 0; k < ops; ++k) {
      if (std::bernoulli_distribution(0.5)(rng)) {
        const Symbol s = pool[rng() % pool.size()];
        t.write(s);
        model.push_back(s);
        written.push_back(s);
      } else {
        const InputTape before = t;
        const Symbol s = t.read();
        if (model.empty()) {
          REQUIRE(s.is_blank());
          REQUIRE(t == before);
        } else {
          REQUIRE(s == model.front());
          model.pop_front();
          read.push_back(s);
        }
      }
      REQUIRE(t.write_head() >= last_w);
      REQUIRE(t.read_head() >= last_r);
      REQUIRE(t.read_head() <= t.write_head());
      last_w = t.write_head();
      last_r = t.read_head();
    }
    REQUIRE(std::equal(read.begin(), read.end(), written.begin()));
  }
}

TEST_CASE("working tape") {
  WorkTape w;
  CHECK(w.scan().is_blank());
  w.move(HeadMove::Left);
  CHECK(w.head() == 0);
  w.write(S("a"));
  w.move(HeadMove::Right);
  w.move(HeadMove::Right);
  w.write(Symbol::blank());
  CHECK(w.contents() == std::vector<Symbol>{S("a")});
  w.write(S("b"));
  CHECK(w.contents() == std::vector<Symbol>{S("a"), Symbol::blank(), S("b")});
  w.move(HeadMove::Left);
  CHECK(w.head() == 1);
}

TEST_CASE("machine validation") {
  CHECK(machine_problems(copier()).empty());

  auto broken = [](auto edit) {
    MachineSpec m = copier();
    edit(m);
    return code_of([&] { validate_machine(m); });
  };
  CHECK(broken([](MachineSpec& m) { m.halt_state = "nope"; }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.input_alphabet.erase(Symbol::blank()); }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.tape_alphabet.erase(S("b")); }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.rules[0].input_moves[0] = HeadMove::Left; }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.rules[0].outputs[0] = Symbol::blank(); }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) {
          m.rules[0].match_inputs[0] = Symbol::blank();
        }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.rules.push_back(m.rules[0]); }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.speed = 0; }) == Errc::InvalidMachine);
  CHECK(broken([](MachineSpec& m) { m.rules[0].state = "qf"; }) == Errc::InvalidMachine);
}

TEST_CASE("rule resolution prefers concrete matches") {
  MachineSpec m = copier();
  TransitionRule wild = m.rules[0];
  wild.match_inputs = {std::nullopt};
  wild.outputs = {S("b")};
  m.rules.insert(m.rules.begin(), wild);
  const std::vector<Symbol> work{Symbol::blank()};
  CHECK(resolve_rule(m, "q0", work, std::vector<Symbol>{S("a")}) == std::optional<std::size_t>(1));
  CHECK(resolve_rule(m, "q0", work, std::vector<Symbol>{S("b")}) == std::optional<std::size_t>(0));
  CHECK_FALSE(resolve_rule(m, "q1", work, std::vector<Symbol>{S("a")}));

  // Equal specificity: earlier rule wins.
  TransitionRule w2 = wild;
  w2.match_work = {std::nullopt};
  w2.match_inputs = {S("b")};
  w2.outputs = {S("x")};
  m.rules.push_back(w2);
  CHECK(resolve_rule(m, "q0", work, std::vector<Symbol>{S("b")}) == std::optional<std::size_t>(0));
}

TEST_CASE("one transition") {
  auto spec = std::make_shared<const MachineSpec>(copier());
  MachineState m = MachineState::initial(spec);
  m.input_tapes[0].write(S("a"));
  const auto out = step(m, m.scanned_inputs());
  CHECK(out.next.current_state == "q1");
  CHECK(out.next.work_tapes[0].contents() == std::vector<Symbol>{S("x")});
  CHECK(out.next.work_tapes[0].head() == 1);
  CHECK(out.next.input_tapes[0].read_head() == 1);
  CHECK(out.effect.emissions == std::vector<Emission>{S("a")});
  CHECK(out.effect.consumed == std::vector<std::size_t>{0});
  CHECK(out.next.transitions_executed == 1);
  CHECK_FALSE(out.effect.halted);
  // step is pure
  CHECK(m.current_state == "q0");
  CHECK(step(m, m.scanned_inputs()).next == out.next);
}

TEST_CASE("no matching rule idles") {
  auto spec = std::make_shared<const MachineSpec>(copier());
  const MachineState m = MachineState::initial(spec);
  const auto out = step(m, m.scanned_inputs());
  CHECK(out.effect.no_rule());
  CHECK(out.next == m);
  CHECK(out.effect.emissions == std::vector<Emission>{std::nullopt});
}

TEST_CASE("halting") {
  MachineSpec spec = copier();
  spec.rules[0].next_state = "qf";
  auto shared = std::make_shared<const MachineSpec>(spec);
  MachineState m = MachineState::initial(shared);
  m.input_tapes[0].write(S("a"));
  const auto out = step(m, m.scanned_inputs());
  CHECK(out.effect.halted);
  CHECK(out.next.halted);
  CHECK(code_of([&] { step(out.next, out.next.scanned_inputs()); }) == Errc::AlreadyHalted);
}

TEST_CASE("wildcard move right over blank leaves the head") {
  MachineSpec spec = copier();
  spec.rules[0].match_inputs = {std::nullopt};
  auto shared = std::make_shared<const MachineSpec>(spec);
  MachineState m = MachineState::initial(shared);
  const auto out = step(m, m.scanned_inputs());
  CHECK(out.effect.rule == std::optional<std::size_t>(0));
  CHECK(out.next.input_tapes[0].read_head() == 0);
  CHECK(out.effect.consumed.empty());
  CHECK(out.effect.blank_reads == std::vector<std::size_t>{0});
}

TEST_CASE("scan vector must match the input count") {
  auto spec = std::make_shared<const MachineSpec>(copier());
  const MachineState m = MachineState::initial(spec);
  CHECK(code_of([&] { step(m, std::vector<Symbol>{}); }) == Errc::InvalidArgument);
}
