#include <doctest.h>

#include <random>
#include <set>

#include "ntm/error.hpp"
#include "ntm/product.hpp"
#include "ntm/scheduler.hpp"
#include "random_network.hpp"

using namespace ntm;
using ntm::testing::RandomPair;

namespace {

const Symbol kA("a"), kB("b");

TransitionRule rule(std::string from, std::string to, std::vector<SymbolPattern> inputs,
                    std::vector<HeadMove> moves, std::vector<Emission> outputs) {
  TransitionRule r;
  r.state = std::move(from);
  r.next_state = std::move(to);
  r.match_work = {std::nullopt};
  r.work_write = {Symbol::blank()};
  r.work_move = {HeadMove::Stay};
  r.match_inputs = std::move(inputs);
  r.input_moves = std::move(moves);
  r.outputs = std::move(outputs);
  return r;
}

MachineSpec base(const std::string& id, std::size_t inputs, std::size_t outputs) {
  MachineSpec m;
  m.id = id;
  m.states = {"q", "q1", "h"};
  m.input_alphabet = {Symbol::blank(), kA, kB};
  m.tape_alphabet = m.input_alphabet;
  m.num_inputs = inputs;
  m.num_outputs = outputs;
  m.start_state = "q";
  m.halt_state = "h";
  return m;
}

MachineSpec producer_ab() {
  MachineSpec m = base("p", 0, 1);
  m.rules = {rule("q", "q1", {}, {}, {kA}), rule("q1", "h", {}, {}, {kB})};
  return m;
}

MachineSpec copier() {
  MachineSpec m = base("c", 1, 1);
  m.rules = {rule("q", "q", {kA}, {HeadMove::Right}, {kA}), rule("q", "q", {kB}, {HeadMove::Right}, {kB})};
  return m;
}

// Counts up on its working tape and emits b every other step, no inputs.
MachineSpec blinker() {
  MachineSpec m = base("m", 0, 1);
  m.rules = {rule("q", "q1", {}, {}, {kA}), rule("q1", "q", {}, {}, {std::nullopt})};
  m.rules[0].work_write = {kB};
  m.rules[0].work_move = {HeadMove::Right};
  return m;
}

RunResult simulate(const Network& n, std::uint64_t steps, std::span<const ExternalSource> sources = {}) {
  return run(n, ClockConfig::from_network(n), sources, steps);
}

std::string product_id(const RandomPair& p) { return compose_product(p.consumer, p.producer, p.wiring).id; }

// Schedules on the consumer tapes the producer does not print on.
std::vector<ExternalSource> free_tape_feeds(std::mt19937_64& rng, const RandomPair& p, const std::string& target) {
  std::set<std::size_t> wired;
  for (const auto& [port, tape] : p.wiring) wired.insert(tape);
  std::vector<Symbol> printable;
  for (const auto& s : p.consumer.input_alphabet) {
    if (!s.is_blank()) printable.push_back(s);
  }
  std::vector<ExternalSource> feeds;
  for (std::size_t k = 0; k < p.consumer.num_inputs; ++k) {
    if (wired.contains(k)) continue;
    ExternalSource src{"feed" + std::to_string(k), {target, k}, {}};
    std::uniform_int_distribution<std::size_t> sym(0, printable.size() - 1);
    for (std::uint64_t t = 0; t < 6; ++t) src.schedule.push_back({t * 2, printable[sym(rng)]});
    feeds.push_back(std::move(src));
  }
  return feeds;
}

void check_equivalent(const RandomPair& p, std::uint64_t steps, std::mt19937_64& rng) {
  const std::uint64_t seed = rng();
  std::mt19937_64 feed_a(seed), feed_b(seed);
  const auto joint_feeds = free_tape_feeds(feed_a, p, p.consumer.id);
  const auto product_feeds = free_tape_feeds(feed_b, p, product_id(p));

  const RunResult joint = simulate(testing::pair_network(p), steps, joint_feeds);
  const RunResult single = simulate(testing::product_network(p), steps, product_feeds);
  REQUIRE(joint.sinks == single.sinks);
  CHECK(joint.ticks == single.ticks);
  CHECK(joint.halt_reason == single.halt_reason);

  const MachineState& m = joint.machines.at(p.consumer.id);
  const MachineState& h = joint.machines.at(p.producer.id);
  const MachineState& q = single.machines.at(product_id(p));
  CHECK(q.current_state == product_state(m.current_state, h.current_state));
  CHECK(q.work_tapes[0] == m.work_tapes[0]);
  CHECK(q.work_tapes[1] == h.work_tapes[0]);
  REQUIRE(q.input_tapes.size() == m.input_tapes.size());
  for (std::size_t k = 0; k < m.input_tapes.size(); ++k) CHECK(q.input_tapes[k] == m.input_tapes[k]);
}

}  // namespace

TEST_CASE("empty producer composition reproduces the consumer") {
  const MachineSpec m = blinker();
  const MachineSpec q = compose_product(m, empty_producer(), {});
  CHECK(q.states.size() == m.states.size());
  CHECK(q.start_state == product_state("q", "h"));
  CHECK(q.num_outputs == 1);
  CHECK(q.feedback.empty());

  Network alone, composed;
  alone.add_machine(m);
  alone.sinks.push_back({"out", {"m", 0}});
  composed.add_machine(q);
  composed.sinks.push_back({"out", {q.id, 0}});
  const RunResult a = simulate(alone, 15);
  const RunResult b = simulate(composed, 15);
  CHECK(a.sinks == b.sinks);
  CHECK(a.sinks.at("out").size() == 8);
  CHECK(b.machines.at(q.id).work_tapes[0] == a.machines.at("m").work_tapes[0]);
  CHECK(b.machines.at(q.id).current_state == product_state(a.machines.at("m").current_state, "h"));
}

TEST_CASE("producer writing ab into a copier") {
  const RandomPair p{copier(), producer_ab(), {{0, 0}}};
  const RunResult joint = simulate(testing::pair_network(p), 20);
  const RunResult single = simulate(testing::product_network(p), 20);
  const std::vector<SinkRecord> expected{{1, kA}, {2, kB}};
  CHECK(joint.sinks.at("out0") == expected);
  CHECK(single.sinks.at("out0") == expected);
  CHECK(joint.halt_reason == HaltReason::Quiescent);
  CHECK(single.halt_reason == HaltReason::Quiescent);
  CHECK(single.machines.at("c-x-p").current_state == product_state("q", "h"));
}

TEST_CASE("product state set is the full cross product") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const RandomPair p = testing::random_pair(rng);
    const MachineSpec q = compose_product(p.consumer, p.producer, p.wiring);
    CHECK(q.states.size() == p.consumer.states.size() * p.producer.states.size());
    CHECK(q.num_work_tapes == p.consumer.num_work_tapes + p.producer.num_work_tapes);
    CHECK(q.num_inputs == p.consumer.num_inputs);
    CHECK(q.num_outputs == p.consumer.num_outputs + p.producer.num_outputs);
    CHECK(q.feedback.size() == p.wiring.size());
    CHECK(machine_problems(q).empty());
  }
}

TEST_CASE("incompatible wirings are rejected") {
  const MachineSpec c = copier();
  const MachineSpec p = producer_ab();
  auto rejects = [](const MachineSpec& m, const MachineSpec& h, const ProductWiring& w) {
    try {
      compose_product(m, h, w);
    } catch (const Error& e) {
      return e.code() == Errc::IncompatibleWiring;
    }
    return false;
  };

  CHECK(rejects(c, p, {}));
  CHECK(rejects(c, p, {{0, 1}}));
  CHECK(rejects(c, p, {{0, 0}, {1, 0}}));
  CHECK(rejects(c, copier(), {{0, 0}}));

  MachineSpec fast = p;
  fast.speed = 2;
  CHECK(rejects(c, fast, {{0, 0}}));

  MachineSpec two_tapes = base("c2", 2, 0);
  MachineSpec twin = base("p2", 0, 2);
  twin.rules = {rule("q", "h", {}, {}, {kA, kB})};
  CHECK(rejects(two_tapes, twin, {{0, 1}, {1, 1}}));
  CHECK_NOTHROW(compose_product(two_tapes, twin, {{0, 1}, {1, 0}}));

  MachineSpec looped = c;
  looped.feedback = {{0, 0}};
  CHECK(rejects(looped, p, {{0, 0}}));

  MachineSpec odd = p;
  odd.input_alphabet.insert(Symbol("z"));
  odd.tape_alphabet.insert(Symbol("z"));
  odd.rules[0].outputs = {Symbol("z")};
  CHECK(rejects(c, odd, {{0, 0}}));
}

TEST_CASE("random pairs: product run equals the joint run") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    CAPTURE(i);
    const RandomPair p = testing::random_pair(rng);
    check_equivalent(p, 30, rng);
  }
}

TEST_CASE("equal speeds above one still compose") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    RandomPair p = testing::random_pair(rng);
    p.consumer.speed = p.producer.speed = 3;
    check_equivalent(p, 10, rng);
  }
}
