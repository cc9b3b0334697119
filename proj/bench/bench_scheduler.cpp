#include <benchmark/benchmark.h>

#include <omp.h>

#include "ntm/scheduler.hpp"

using namespace ntm;

namespace {

// A chain of relays that fire on every tick: each reads whatever is on its
// tape (blank included), counts on its working tape and passes a symbol on.
MachineSpec relay(const std::string& id, unsigned speed) {
  const Symbol a("a"), b("b");
  MachineSpec m;
  m.id = id;
  m.states = {"q", "r", "h"};
  m.input_alphabet = {Symbol::blank(), a, b};
  m.tape_alphabet = m.input_alphabet;
  m.num_inputs = 1;
  m.num_outputs = 1;
  m.start_state = "q";
  m.halt_state = "h";
  m.speed = speed;
  auto rule = [&](const std::string& from, const std::string& to, SymbolPattern in, Symbol write, Emission out) {
    TransitionRule r;
    r.state = from;
    r.next_state = to;
    r.match_work = {std::nullopt};
    r.work_write = {std::move(write)};
    r.work_move = {HeadMove::Right};
    r.match_inputs = {std::move(in)};
    r.input_moves = {HeadMove::Right};
    r.outputs = {std::move(out)};
    return r;
  };
  m.rules = {rule("q", "r", std::nullopt, a, a), rule("r", "q", std::nullopt, b, std::nullopt),
             rule("q", "q", b, b, b)};
  return m;
}

Network chain(std::size_t machines) {
  Network n;
  for (std::size_t i = 0; i < machines; ++i) {
    n.add_machine(relay("m" + std::to_string(i), static_cast<unsigned>(1 + i % 3)));
    if (i > 0) n.connections.push_back({{"m" + std::to_string(i - 1), 0}, {"m" + std::to_string(i), 0}});
  }
  n.sinks.push_back({"out", {"m" + std::to_string(machines - 1), 0}});
  return n;
}

constexpr std::uint64_t kSteps = 50;

template <class Runner>
void run_chain(benchmark::State& state, Runner runner) {
  const Network n = chain(static_cast<std::size_t>(state.range(0)));
  const ClockConfig clocks = ClockConfig::from_network(n);
  std::size_t transitions = 0;
  for (auto _ : state) {
    const RunResult r = runner(n, clocks, std::span<const ExternalSource>{}, kSteps);
    transitions = 0;
    for (const auto& [id, m] : r.machines) transitions += m.transitions_executed;
    benchmark::DoNotOptimize(r.ticks);
  }
  state.counters["transitions"] = static_cast<double>(transitions);
  state.counters["threads"] = omp_get_max_threads();
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * transitions));
}

void BM_Run(benchmark::State& state) { run_chain(state, run); }
void BM_RunReference(benchmark::State& state) { run_chain(state, run_reference); }

}  // namespace

BENCHMARK(BM_Run)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunReference)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
