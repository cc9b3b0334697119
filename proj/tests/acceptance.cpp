// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cli_runner.hpp"
#include "ntm/awareness.hpp"
#include "ntm/graph.hpp"
#include "ntm/io.hpp"
#include "ntm/model.hpp"
#include "ntm/scheduler.hpp"
#include "ntm/tape.hpp"
#include "random_network.hpp"

using namespace ntm;
using ntm::testing::fixture_path;

namespace {

struct Failure {
  std::string why;
};

void expect(bool ok, const std::string& why) {
  if (!ok) throw Failure{why};
}

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct NetworkFixture {
  const char* network;
  const char* trace;  // nullptr when the network runs on its own sources
};

const NetworkFixture kNetworks[] = {
    {"feedback_counter.json", nullptr},      {"pipeline_speeds.json", nullptr},
    {"model2_net.json", "model2_trace.json"}, {"model2_net.json", "model2_trace_no_location.json"},
    {"redundancy_net.json", "redundancy_trace.json"}, {"constant_net.json", "constant_trace.json"},
};

SystemModel load_model(const std::string& name) { return parse_model(read_text_file(fixture_path(name))); }

std::size_t flow_count(const SystemModel& m) {
  std::size_t n = 0;
  for (const auto& c : m.connections) n += c.flows().size();
  return n;
}

std::string fixture_counts() {
  const SystemModel m1 = load_model("model1.ctx");
  expect(m1.procedures.size() == 2, "model1 procedures: " + str(m1.procedures.size()));
  expect(m1.procedures[0].id == 1 && m1.procedures[1].id == 9, "model1 procedure ids are not 1 and 9");
  expect(m1.contexts.size() == 4, "model1 contexts: " + str(m1.contexts.size()));
  expect(m1.connections.size() == 5, "model1 statements: " + str(m1.connections.size()));
  expect(flow_count(m1) == 8, "model1 directed edges: " + str(flow_count(m1)));
  expect(build_graph(m1).edges.size() == 8, "model1 graph edges");

  const SystemModel m2 = load_model("model2.ctx");
  expect(m2.procedures.size() == 8, "model2 procedures: " + str(m2.procedures.size()));
  expect(m2.contexts.size() == 4, "model2 contexts: " + str(m2.contexts.size()));
  expect(m2.connections.size() == 12, "model2 statements: " + str(m2.connections.size()));
  expect(flow_count(m2) == 13, "model2 directed edges: " + str(flow_count(m2)));
  expect(build_graph(m2).edges.size() == 13, "model2 graph edges");
  return "model1 2/4/5/8, model2 8/4/12/13";
}

std::string tape_laws() {
  std::mt19937_64 rng(20240601);
  const auto alphabet = std::make_shared<const Alphabet>(Alphabet{Symbol::blank(), Symbol("a"), Symbol("b"), Symbol("c")});
  const std::vector<Symbol> pool{Symbol("a"), Symbol("b"), Symbol("c")};
  const int trials = 10'000;
  std::size_t operations = 0;
  for (int trial = 0; trial < trials; ++trial) {
    InputTape tape(alphabet);
    std::deque<Symbol> queue;
    std::size_t last_w = 0, last_r = 0;
    const int ops = std::uniform_int_distribution<int>(1, 40)(rng);
    for (int k = 0; k < ops; ++k, ++operations) {
      if (std::bernoulli_distribution(0.5)(rng)) {
        const Symbol s = pool[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
        tape.write(s);
        queue.push_back(s);
      } else {
        const InputTape before = tape;
        const Symbol s = tape.read();
        if (queue.empty()) {
          expect(s.is_blank(), "read from an exhausted tape was not blank");
          expect(tape == before, "blank read moved the tape");
          expect(tape.read().is_blank() && tape == before, "repeated blank read changed the tape");
        } else {
          expect(s == queue.front(), "FIFO order broken at trial " + str(trial));
          queue.pop_front();
        }
      }
      expect(tape.write_head() >= last_w && tape.read_head() >= last_r, "a head moved left");
      expect(tape.read_head() <= tape.write_head(), "reader passed the writer");
      last_w = tape.write_head();
      last_r = tape.read_head();
    }
  }
  return str(trials) + " interleavings, " + str(operations) + " operations";
}

TransitionRule free_rule(std::size_t inputs, std::size_t outputs) {
  TransitionRule r;
  r.state = "q";
  r.next_state = "q";
  r.match_work = {std::nullopt};
  r.work_write = {Symbol::blank()};
  r.work_move = {HeadMove::Stay};
  r.match_inputs.assign(inputs, std::nullopt);
  r.input_moves.assign(inputs, HeadMove::Stay);
  r.outputs.assign(outputs, Emission{Symbol("a")});
  return r;
}

MachineSpec always_fires(const std::string& id, std::size_t inputs, std::size_t outputs, unsigned speed) {
  MachineSpec m;
  m.id = id;
  m.states = {"q", "h"};
  m.input_alphabet = {Symbol::blank(), Symbol("a")};
  m.tape_alphabet = m.input_alphabet;
  m.num_inputs = inputs;
  m.num_outputs = outputs;
  m.start_state = "q";
  m.halt_state = "h";
  m.speed = speed;
  m.rules = {free_rule(inputs, outputs)};
  return m;
}

std::string speed_law() {
  const std::pair<unsigned, unsigned> pairs[] = {{1, 1}, {1, 2}, {2, 3}, {3, 5}};
  const std::uint64_t steps = 12;
  std::string detail;
  for (const auto& [sb, sc] : pairs) {
    Network n;
    n.add_machine(always_fires("b", 0, 1, sb));
    n.add_machine(always_fires("c", 1, 0, sc));
    n.connections.push_back({{"b", 0}, {"c", 0}});
    const RunResult r = run(n, ClockConfig::from_network(n), {}, steps);
    const std::uint64_t tb = r.machines.at("b").transitions_executed;
    const std::uint64_t tc = r.machines.at("c").transitions_executed;
    const std::string pair = "(" + str(sb) + "," + str(sc) + ")";
    expect(tb == steps * sb && tc == steps * sc, pair + ": counts " + str(tb) + "/" + str(tc));
    expect(tc * sb == tb * sc, pair + ": ratio " + str(tc) + "/" + str(tb) + " != " + str(sc) + "/" + str(sb));
    detail += (detail.empty() ? "" : " ") + pair + "=" + str(tc) + "/" + str(tb);
  }
  return detail;
}

std::vector<ExternalSource> fixture_sources(Network& n, const NetworkFixture& f) {
  if (!f.trace) return {};
  const ContextTrace t = load_trace(fixture_path(f.trace));
  n = admit_delimiter(n, t);
  return encode_trace(t, n);
}

std::string dual_scheduler() {
  std::size_t fixtures = 0;
  for (const auto& f : kNetworks) {
    Network n = load_network(fixture_path(f.network));
    const auto sources = fixture_sources(n, f);
    const ClockConfig clocks = ClockConfig::from_network(n);
    expect(run(n, clocks, sources, 60) == run_reference(n, clocks, sources, 60),
           std::string("fixture ") + f.network + " differs");
    ++fixtures;
  }
  std::mt19937_64 rng(1000);
  const int cases = 1000;
  for (int i = 0; i < cases; ++i) {
    const auto c = testing::random_case(rng);
    expect(run(c.network, c.clocks, c.extra_sources, c.budget) ==
               run_reference(c.network, c.clocks, c.extra_sources, c.budget),
           "random network " + str(i) + " differs");
  }
  return str(fixtures) + " fixture runs, " + str(cases) + " random networks";
}

std::string product_equivalence() {
  std::mt19937_64 rng(4242);
  const int pairs = 150;
  std::size_t symbols = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto p = testing::random_pair(rng);
    const Network joint = testing::pair_network(p);
    const Network single = testing::product_network(p);
    const RunResult a = run(joint, ClockConfig::from_network(joint), {}, 30);
    const RunResult b = run(single, ClockConfig::from_network(single), {}, 30);
    expect(a.sinks == b.sinks, "pair " + str(i) + ": sink streams differ");
    expect(a.ticks == b.ticks, "pair " + str(i) + ": step counts differ");
    for (const auto& [id, s] : a.sinks) symbols += s.size();
  }
  return str(pairs) + " pairs, " + str(symbols) + " output symbols compared";
}

std::string awareness() {
  const Network n = load_network(fixture_path("model2_net.json"));
  const AwarenessReport full = run_and_check_awareness(n, load_trace(fixture_path("model2_trace.json")));
  expect(full.aware, "Model 2 network is not aware");
  expect(full.vectors.size() == 4, "expected four vectors in C_A");
  for (const auto& v : full.vectors) {
    expect(v.status == VectorStatus::ConsumedAndProduced, v.vector + " is " + to_string(v.status));
  }
  const AwarenessReport cut = run_and_check_awareness(n, load_trace(fixture_path("model2_trace_no_location.json")));
  expect(!cut.aware, "still aware without the location binding");
  for (const auto& v : cut.vectors) {
    const bool ok = v.vector == "location" ? v.status == VectorStatus::Unconsumed
                                           : v.status == VectorStatus::ConsumedAndProduced;
    expect(ok, "after the cut, " + v.vector + " is " + to_string(v.status));
  }
  return "aware with 4/4 vectors; without (location): location unconsumed";
}

std::string effectiveness() {
  const Network m2 = load_network(fixture_path("model2_net.json"));
  const ContextTrace t2 = load_trace(fixture_path("model2_trace.json"));
  const EffectivenessReport same = check_effective(m2, t2, t2.awareness_subset);
  expect(same.degenerate && same.score == 1.0, "degenerate score " + str(same.score));

  const Network red = load_network(fixture_path("redundancy_net.json"));
  const ContextTrace rt = load_trace(fixture_path("redundancy_trace.json"));
  const EffectivenessReport drop = check_effective(red, rt, std::vector<std::string>{"a"});
  expect(drop.score >= 0.8, "redundancy score " + str(drop.score));
  return "degenerate " + str(same.score) + ", redundancy " + str(drop.score);
}

std::string determinism() {
  std::size_t bytes = 0;
  for (const auto& f : kNetworks) {
    std::vector<std::string> args{"simulate", fixture_path(f.network), "--log", "-", "--steps", "60"};
    if (f.trace) {
      args.push_back("--trace");
      args.push_back(fixture_path(f.trace));
    }
    const auto first = testing::run_ntmctx(args);
    const auto second = testing::run_ntmctx(args);
    expect(first.exit_code == 0 && second.exit_code == 0, std::string("simulate failed on ") + f.network);
    expect(!first.out.empty() && first.out == second.out, std::string("logs differ for ") + f.network);
    bytes += first.out.size();
  }
  return str(std::size(kNetworks)) + " fixtures, " + str(bytes) + " log bytes identical";
}

std::string refinement() {
  const RefinementReport r = refine_check(load_model("model1.ctx"), load_model("model2.ctx"),
                                          load_refinement_map(fixture_path("model1_to_model2.map.json")));
  expect(r.coarse_edges.size() == 8, "coarse edges: " + str(r.coarse_edges.size()));
  expect(r.realized() == 8, "realized: " + str(r.realized()));
  expect(r.extraneous.empty(), "extraneous: " + str(r.extraneous.size()));
  return "8/8 realized, 0 extraneous";
}

struct Criterion {
  const char* title;
  double limit_seconds;  // 0 = no limit
  std::function<std::string()> check;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"fixture reproduction", 1.0, fixture_counts},
      {"tape semantics", 10.0, tape_laws},
      {"speed law", 0, speed_law},
      {"run matches run_reference", 60.0, dual_scheduler},
      {"product machine equivalence", 0, product_equivalence},
      {"awareness checker", 0, awareness},
      {"effective awareness", 0, effectiveness},
      {"simulate determinism", 0, determinism},
      {"refinement", 0, refinement},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.check();
    } catch (const Failure& f) {
      ok = false;
      detail = f.why;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      ok = false;
      detail += "; over the " + str(c.limit_seconds) + " s limit";
    }
    if (!ok) ++failed;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << (ok ? "PASS " : "FAIL ") << index << ": " << c.title << " (" << timing << ") " << detail << '\n';
  }
  std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria) << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
