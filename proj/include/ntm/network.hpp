#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ntm/machine.hpp"

namespace ntm {

/// `machineId.portIndex`. Depending on context the index names an input tape
/// or an output port.
struct PortRef {
  std::string machine;
  std::size_t index = 0;

  /// Splits at the last '.'. Throws FormatError.
  static PortRef parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend std::strong_ordering operator<=>(const PortRef&, const PortRef&) = default;
};

/// con(from.machine, to.machine): output port `from` prints on input tape `to`.
struct Connection {
  PortRef from;
  PortRef to;

  friend bool operator==(const Connection&, const Connection&) = default;
};

struct ScheduledSymbol {
  std::uint64_t time = 0;  // global step
  Symbol symbol;

  friend bool operator==(const ScheduledSymbol&, const ScheduledSymbol&) = default;
};

/// An entity outside the network that prints on one input tape.
struct ExternalSource {
  std::string id;
  PortRef to;
  std::vector<ScheduledSymbol> schedule;  // times non-decreasing, symbols non-blank

  friend bool operator==(const ExternalSource&, const ExternalSource&) = default;
};

/// An entity outside the network that records what one output port emits.
struct ExternalSink {
  std::string id;
  PortRef from;

  friend bool operator==(const ExternalSink&, const ExternalSink&) = default;
};

struct Network {
  std::map<std::string, std::shared_ptr<const MachineSpec>> machines;
  std::vector<Connection> connections;
  std::vector<ExternalSource> sources;
  std::vector<ExternalSink> sinks;

  const MachineSpec* find(std::string_view id) const;
  void add_machine(MachineSpec spec);
};

enum class ViolationKind {
  IsolatedMachine,
  DoubleWriter,
  PortFanOut,
  ArityViolation,
  DanglingEndpoint,
  UnboundPort,
  AlphabetMismatch,
  InvalidMachine,
  BadSchedule,
  DuplicateId,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Checks the networking predicate (every machine is connected to something,
/// in either direction, external ports included), single-writer tapes,
/// single-use output ports, arities, dangling endpoints, unbound output
/// ports, alphabet compatibility along every edge and source schedules.
ValidationReport validate_network(const Network& n);

/// Like validate_network() but also covers `extra` sources (e.g. from a
/// context trace) as writers.
ValidationReport validate_network(const Network& n, const std::vector<ExternalSource>& extra);

/// Adds an edge. `from` is `m.k` (output port) or an external source id;
/// `to` is `m.k` (input tape) or an external sink id.
/// Throws PortNotFound, DoubleWriter or PortInUse.
Network wire(Network n, std::string_view from, std::string_view to);

/// Where one output port's emissions land.
struct Destination {
  std::variant<PortRef, std::string> target;  // input tape, or sink id

  bool is_sink() const noexcept { return std::holds_alternative<std::string>(target); }
  const PortRef& tape() const { return std::get<PortRef>(target); }
  const std::string& sink() const { return std::get<std::string>(target); }
  std::string str() const;

  friend bool operator==(const Destination&, const Destination&) = default;
};

/// Output port -> destination, covering connections, sinks and feedback links.
class RoutingTable {
 public:
  RoutingTable() = default;
  explicit RoutingTable(const Network& n);

  const Destination* find(const PortRef& port) const;
  const std::map<PortRef, Destination>& entries() const noexcept { return table_; }

 private:
  std::map<PortRef, Destination> table_;
};

struct RoutedWrite {
  PortRef from;
  Destination to;
  Symbol symbol;

  friend bool operator==(const RoutedWrite&, const RoutedWrite&) = default;
};

/// Maps one tick's emissions to their destinations, ordered by machine id
/// then port. Emissions on unrouted ports are dropped (validation rejects
/// such networks up front).
std::vector<RoutedWrite> route(const RoutingTable& table,
                               const std::map<std::string, std::vector<Emission>>& emissions);

}  // namespace ntm
