#include <numeric>
#include <sstream>

#include "ntm/error.hpp"
#include "ntm/scheduler.hpp"

namespace ntm {

ClockConfig::ClockConfig(std::map<std::string, unsigned> speeds) : speeds_(std::move(speeds)) {
  for (const auto& [id, sigma] : speeds_) {
    if (sigma == 0) throw Error(Errc::InvalidArgument, "speed of '" + id + "' must be positive");
    resolution_ = std::lcm(resolution_, std::uint64_t{sigma});
  }
}

ClockConfig ClockConfig::from_network(const Network& n, const std::map<std::string, unsigned>& overrides) {
  std::map<std::string, unsigned> speeds;
  for (const auto& [id, spec] : n.machines) speeds[id] = spec->speed;
  for (const auto& [id, sigma] : overrides) {
    if (!speeds.contains(id)) throw Error(Errc::InvalidArgument, "speed given for unknown machine '" + id + "'");
    speeds[id] = sigma;
  }
  return ClockConfig(std::move(speeds));
}

unsigned ClockConfig::speed(const std::string& machine) const {
  const auto it = speeds_.find(machine);
  if (it == speeds_.end()) throw Error(Errc::InvalidArgument, "no speed for machine '" + machine + "'");
  return it->second;
}

std::uint64_t ClockConfig::period(const std::string& machine) const { return resolution_ / speed(machine); }

std::map<std::string, unsigned> parse_speeds(std::string_view text) {
  std::map<std::string, unsigned> speeds;
  std::istringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(Errc::FormatError, "bad speed '" + item + "', expected id=N");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    unsigned long sigma = 0;
    try {
      sigma = std::stoul(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || sigma == 0 || sigma > 1'000'000) {
      throw Error(Errc::FormatError, "bad speed value in '" + item + "'");
    }
    speeds[item.substr(0, eq)] = static_cast<unsigned>(sigma);
  }
  return speeds;
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Transition: return "transition";
    case EventKind::Idle: return "idle";
    case EventKind::Halt: return "halt";
    case EventKind::Inject: return "inject";
    case EventKind::Route: return "route";
    case EventKind::ReadBlank: return "read-blank";
  }
  return "unknown";
}

EventKind event_kind_from_string(std::string_view text) {
  for (auto kind : {EventKind::Transition, EventKind::Idle, EventKind::Halt, EventKind::Inject, EventKind::Route,
                    EventKind::ReadBlank}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(Errc::FormatError, "unknown event kind '" + std::string(text) + "'");
}

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::AllHalted: return "all-halted";
    case HaltReason::Quiescent: return "quiescent";
    case HaltReason::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

HaltReason halt_reason_from_string(std::string_view text) {
  for (auto r : {HaltReason::AllHalted, HaltReason::Quiescent, HaltReason::BudgetExhausted}) {
    if (text == to_string(r)) return r;
  }
  throw Error(Errc::FormatError, "unknown halt reason '" + std::string(text) + "'");
}

std::vector<std::uint64_t> injection_ticks(const std::vector<ScheduledSymbol>& schedule,
                                           std::uint64_t micro_resolution) {
  std::vector<std::uint64_t> ticks;
  ticks.reserve(schedule.size());
  for (const auto& entry : schedule) {
    std::uint64_t due = entry.time * micro_resolution;
    if (!ticks.empty()) due = std::max(due, ticks.back() + 1);
    ticks.push_back(due);
  }
  return ticks;
}

}  // namespace ntm
