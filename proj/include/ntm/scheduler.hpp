#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ntm/network.hpp"
#include "ntm/step.hpp"

namespace ntm {

inline constexpr std::uint64_t kDefaultBudget = 10'000;

/// Per-machine speeds. A global step is divided into micro_resolution()
/// micro-ticks (the lcm of all speeds); machine m fires every
/// micro_resolution() / speed(m) micro-ticks, so it performs exactly speed(m)
/// transitions per global step.
class ClockConfig {
 public:
  ClockConfig() = default;
  explicit ClockConfig(std::map<std::string, unsigned> speeds);

  /// Speeds from each machine's spec, then `overrides` on top.
  static ClockConfig from_network(const Network& n, const std::map<std::string, unsigned>& overrides = {});

  unsigned speed(const std::string& machine) const;
  std::uint64_t micro_resolution() const noexcept { return resolution_; }
  std::uint64_t period(const std::string& machine) const;

  const std::map<std::string, unsigned>& speeds() const noexcept { return speeds_; }

 private:
  std::map<std::string, unsigned> speeds_;
  std::uint64_t resolution_ = 1;
};

/// Parses `m0=1,m1=2`. Throws FormatError.
std::map<std::string, unsigned> parse_speeds(std::string_view text);

enum class EventKind { Transition, Idle, Halt, Inject, Route, ReadBlank };

const char* to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view text);

struct TransitionEvent {
  std::string from;
  std::string to;
  std::size_t rule = 0;
  std::vector<std::size_t> consumed;

  friend bool operator==(const TransitionEvent&, const TransitionEvent&) = default;
};

struct IdleEvent {
  std::string state;

  friend bool operator==(const IdleEvent&, const IdleEvent&) = default;
};

struct HaltEvent {
  std::string state;

  friend bool operator==(const HaltEvent&, const HaltEvent&) = default;
};

struct InjectEvent {
  std::string source;
  std::size_t tape = 0;
  Symbol symbol;

  friend bool operator==(const InjectEvent&, const InjectEvent&) = default;
};

struct RouteEvent {
  std::size_t port = 0;
  Symbol symbol;
  Destination to;

  friend bool operator==(const RouteEvent&, const RouteEvent&) = default;
};

struct ReadBlankEvent {
  std::size_t tape = 0;

  friend bool operator==(const ReadBlankEvent&, const ReadBlankEvent&) = default;
};

using EventPayload = std::variant<TransitionEvent, IdleEvent, HaltEvent, InjectEvent, RouteEvent, ReadBlankEvent>;

/// One log record. `machine` is the acting machine, or the target machine for
/// injections.
struct Event {
  std::uint64_t tick = 0;
  std::string machine;
  EventPayload payload;

  EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }

  friend bool operator==(const Event&, const Event&) = default;
};

enum class HaltReason { AllHalted, Quiescent, BudgetExhausted };

const char* to_string(HaltReason reason);
HaltReason halt_reason_from_string(std::string_view text);

struct Termination {
  HaltReason reason = HaltReason::Quiescent;
  std::uint64_t tick = 0;  // micro-ticks elapsed

  friend bool operator==(const Termination&, const Termination&) = default;
};

struct EventLog {
  std::uint64_t micro_resolution = 1;
  std::vector<Event> events;
  std::optional<Termination> end;  // absent for a truncated log

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

struct SinkRecord {
  std::uint64_t tick = 0;
  Symbol symbol;

  friend bool operator==(const SinkRecord&, const SinkRecord&) = default;
};

using SinkStreams = std::map<std::string, std::vector<SinkRecord>>;

struct RunResult {
  std::map<std::string, MachineState> machines;
  SinkStreams sinks;
  EventLog log;
  HaltReason halt_reason = HaltReason::Quiescent;
  std::uint64_t ticks = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Advances `n` through `budget` global steps. Each micro-tick runs four
/// phases: (1) due external injections, (2) firing machines sample their
/// scanned symbols, (3) step outcomes, (4) emissions routed and written in
/// machine-id order. Writes from phase 4 are first visible at the next
/// micro-tick. Phase 3 runs in parallel; the log order does not depend on it.
///
/// `sources` are added to the network's own sources.
/// Throws InvalidNetwork.
RunResult run(const Network& n, const ClockConfig& clocks, std::span<const ExternalSource> sources,
              std::uint64_t budget = kDefaultBudget);

/// Sequential interpreter with its own tape, matching and routing code. Same
/// contract as run(); used as its oracle.
RunResult run_reference(const Network& n, const ClockConfig& clocks, std::span<const ExternalSource> sources,
                        std::uint64_t budget = kDefaultBudget);

/// Rebuilds a run from its log alone, checking every event against `n` and
/// the firing schedule of `clocks`: each running machine must log exactly
/// one transition or idle at each of its firing ticks. A log without an end
/// record is treated as truncated and yields the state at the cut.
/// Throws LogMismatch.
RunResult replay(const EventLog& log, const Network& n, const ClockConfig& clocks);

/// replay() with the speeds declared in `n`.
RunResult replay(const EventLog& log, const Network& n);

/// Micro-tick of each schedule entry: entry k goes in at
/// max(time_k * resolution, tick_{k-1} + 1).
std::vector<std::uint64_t> injection_ticks(const std::vector<ScheduledSymbol>& schedule,
                                           std::uint64_t micro_resolution);

}  // namespace ntm
