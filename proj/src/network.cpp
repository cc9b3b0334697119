#include "ntm/network.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "ntm/error.hpp"

namespace ntm {

PortRef PortRef::parse(std::string_view text) {
  const auto dot = text.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size()) {
    throw Error(Errc::FormatError, "bad port '" + std::string(text) + "', expected machineId.portIndex");
  }
  PortRef ref;
  ref.machine = std::string(text.substr(0, dot));
  const auto digits = text.substr(dot + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ref.index);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(Errc::FormatError, "bad port index in '" + std::string(text) + "'");
  }
  return ref;
}

std::string PortRef::str() const { return machine + "." + std::to_string(index); }

const MachineSpec* Network::find(std::string_view id) const {
  const auto it = machines.find(std::string(id));
  return it == machines.end() ? nullptr : it->second.get();
}

void Network::add_machine(MachineSpec spec) {
  auto id = spec.id;
  machines[id] = std::make_shared<const MachineSpec>(std::move(spec));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::IsolatedMachine: return "isolated machine";
    case ViolationKind::DoubleWriter: return "double writer";
    case ViolationKind::PortFanOut: return "port fan-out";
    case ViolationKind::ArityViolation: return "arity violation";
    case ViolationKind::DanglingEndpoint: return "dangling endpoint";
    case ViolationKind::UnboundPort: return "unbound port";
    case ViolationKind::AlphabetMismatch: return "alphabet mismatch";
    case ViolationKind::InvalidMachine: return "invalid machine";
    case ViolationKind::BadSchedule: return "bad schedule";
    case ViolationKind::DuplicateId: return "duplicate id";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_network(const Network& n) { return validate_network(n, {}); }

ValidationReport validate_network(const Network& n, const std::vector<ExternalSource>& extra) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::string subject, std::string message) {
    report.violations.push_back({kind, std::move(subject), std::move(message)});
  };

  std::set<std::string> participating;
  std::map<PortRef, std::vector<std::string>> writers;  // input tape -> writers
  std::map<PortRef, std::vector<std::string>> users;    // output port -> consumers

  for (const auto& [key, spec] : n.machines) {
    if (!spec || spec->id != key) {
      add(ViolationKind::InvalidMachine, key, "machine registered under a different id");
      continue;
    }
    for (auto& problem : machine_problems(*spec)) add(ViolationKind::InvalidMachine, key, std::move(problem));
    for (const auto& link : spec->feedback) {
      writers[{key, link.tape}].push_back("feedback " + key + "." + std::to_string(link.port));
      users[{key, link.port}].push_back("feedback tape " + std::to_string(link.tape));
      participating.insert(key);
    }
  }

  std::set<std::string> ids;
  for (const auto& [key, spec] : n.machines) ids.insert(key);
  auto claim_id = [&](const std::string& id, const std::string& what) {
    if (id.empty()) add(ViolationKind::UnboundPort, what, what + " has an empty id");
    else if (!ids.insert(id).second) add(ViolationKind::DuplicateId, id, "id '" + id + "' used twice");
  };

  // Resolves an endpoint; records dangling/arity problems and returns the machine.
  auto endpoint = [&](const PortRef& ref, bool input, const std::string& context) -> const MachineSpec* {
    const MachineSpec* spec = n.find(ref.machine);
    if (!spec) {
      add(ViolationKind::DanglingEndpoint, context, context + ": no machine '" + ref.machine + "'");
      return nullptr;
    }
    const std::size_t arity = input ? spec->num_inputs : spec->num_outputs;
    if (ref.index >= arity) {
      add(ViolationKind::ArityViolation, context,
          context + ": " + (input ? "input tape " : "output port ") + ref.str() + " out of range");
      return nullptr;
    }
    return spec;
  };

  for (const auto& c : n.connections) {
    const std::string what = "connection " + c.from.str() + "->" + c.to.str();
    const MachineSpec* src = endpoint(c.from, false, what);
    const MachineSpec* dst = endpoint(c.to, true, what);
    if (n.find(c.from.machine)) participating.insert(c.from.machine);
    if (n.find(c.to.machine)) participating.insert(c.to.machine);
    if (!src || !dst) continue;
    users[c.from].push_back(what);
    writers[c.to].push_back(what);
    for (const auto& s : emitted_symbols(*src, c.from.index)) {
      if (!dst->tape_alphabet.contains(s)) {
        add(ViolationKind::AlphabetMismatch, what,
            what + ": symbol '" + s.str() + "' not in the alphabet of '" + dst->id + "'");
      }
    }
  }

  auto check_source = [&](const ExternalSource& s) {
    const std::string what = "source '" + s.id + "'";
    claim_id(s.id, what);
    const MachineSpec* dst = endpoint(s.to, true, what);
    if (n.find(s.to.machine)) participating.insert(s.to.machine);
    if (dst) writers[s.to].push_back(what);
    for (std::size_t k = 0; k < s.schedule.size(); ++k) {
      const auto& entry = s.schedule[k];
      if (k > 0 && entry.time < s.schedule[k - 1].time) {
        add(ViolationKind::BadSchedule, s.id, what + ": schedule times decrease at entry " + std::to_string(k));
      }
      if (entry.symbol.is_blank()) {
        add(ViolationKind::BadSchedule, s.id, what + ": blank in schedule at entry " + std::to_string(k));
      } else if (dst && !dst->tape_alphabet.contains(entry.symbol)) {
        add(ViolationKind::AlphabetMismatch, s.id,
            what + ": symbol '" + entry.symbol.str() + "' not in the alphabet of '" + dst->id + "'");
      }
    }
  };
  for (const auto& s : n.sources) check_source(s);
  for (const auto& s : extra) check_source(s);

  for (const auto& s : n.sinks) {
    const std::string what = "sink '" + s.id + "'";
    claim_id(s.id, what);
    if (n.find(s.from.machine)) participating.insert(s.from.machine);
    if (endpoint(s.from, false, what)) users[s.from].push_back(what);
  }

  for (const auto& [tape, list] : writers) {
    if (list.size() > 1) {
      std::string msg = "input tape " + tape.str() + " has " + std::to_string(list.size()) + " writers:";
      for (const auto& w : list) msg += " [" + w + "]";
      add(ViolationKind::DoubleWriter, tape.str(), msg);
    }
  }
  for (const auto& [port, list] : users) {
    if (list.size() > 1) {
      add(ViolationKind::PortFanOut, port.str(),
          "output port " + port.str() + " feeds " + std::to_string(list.size()) + " destinations");
    }
  }

  for (const auto& [key, spec] : n.machines) {
    if (!spec) continue;
    if (!participating.contains(key)) {
      add(ViolationKind::IsolatedMachine, key, "machine '" + key + "' has no connection in either direction");
    }
    for (std::size_t p = 0; p < spec->num_outputs; ++p) {
      if (!users.contains({key, p})) {
        add(ViolationKind::UnboundPort, key + "." + std::to_string(p),
            "output port " + key + "." + std::to_string(p) + " has no destination");
      }
    }
  }
  return report;
}

namespace {

bool tape_has_writer(const Network& n, const PortRef& tape) {
  for (const auto& c : n.connections) {
    if (c.to == tape) return true;
  }
  for (const auto& s : n.sources) {
    if (s.to == tape) return true;
  }
  if (const auto* spec = n.find(tape.machine)) {
    for (const auto& link : spec->feedback) {
      if (link.tape == tape.index) return true;
    }
  }
  return false;
}

bool port_in_use(const Network& n, const PortRef& port) {
  for (const auto& c : n.connections) {
    if (c.from == port) return true;
  }
  for (const auto& s : n.sinks) {
    if (s.from == port) return true;
  }
  if (const auto* spec = n.find(port.machine)) {
    for (const auto& link : spec->feedback) {
      if (link.port == port.index) return true;
    }
  }
  return false;
}

}  // namespace

Network wire(Network n, std::string_view from, std::string_view to) {
  const bool from_machine = from.find('.') != std::string_view::npos;
  const bool to_machine = to.find('.') != std::string_view::npos;

  std::optional<PortRef> out_port;
  if (from_machine) {
    out_port = PortRef::parse(from);
    const auto* spec = n.find(out_port->machine);
    if (!spec || out_port->index >= spec->num_outputs) {
      throw Error(Errc::PortNotFound, "no output port " + out_port->str());
    }
    if (port_in_use(n, *out_port)) throw Error(Errc::PortInUse, "output port " + out_port->str() + " already routed");
  }

  if (to_machine) {
    const PortRef tape = PortRef::parse(to);
    const auto* spec = n.find(tape.machine);
    if (!spec || tape.index >= spec->num_inputs) throw Error(Errc::PortNotFound, "no input tape " + tape.str());
    if (tape_has_writer(n, tape)) throw Error(Errc::DoubleWriter, "input tape " + tape.str() + " already has a writer");
    if (out_port) {
      n.connections.push_back({*out_port, tape});
    } else {
      const std::string id(from);
      if (id.empty() || n.find(id)) throw Error(Errc::PortNotFound, "bad source id '" + id + "'");
      for (const auto& s : n.sources) {
        if (s.id == id) throw Error(Errc::PortInUse, "source '" + id + "' already bound");
      }
      n.sources.push_back({id, tape, {}});
    }
    return n;
  }

  if (!out_port) throw Error(Errc::PortNotFound, "cannot wire source '" + std::string(from) + "' to a sink");
  const std::string id(to);
  if (id.empty() || n.find(id)) throw Error(Errc::PortNotFound, "bad sink id '" + id + "'");
  for (const auto& s : n.sinks) {
    if (s.id == id) throw Error(Errc::PortInUse, "sink '" + id + "' already bound");
  }
  n.sinks.push_back({id, *out_port});
  return n;
}

std::string Destination::str() const { return is_sink() ? sink() : tape().str(); }

RoutingTable::RoutingTable(const Network& n) {
  for (const auto& c : n.connections) table_.emplace(c.from, Destination{c.to});
  for (const auto& s : n.sinks) table_.emplace(s.from, Destination{s.id});
  for (const auto& [id, spec] : n.machines) {
    for (const auto& link : spec->feedback) {
      table_.emplace(PortRef{id, link.port}, Destination{PortRef{id, link.tape}});
    }
  }
}

const Destination* RoutingTable::find(const PortRef& port) const {
  const auto it = table_.find(port);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<RoutedWrite> route(const RoutingTable& table,
                               const std::map<std::string, std::vector<Emission>>& emissions) {
  std::vector<RoutedWrite> writes;
  for (const auto& [machine, ports] : emissions) {
    for (std::size_t p = 0; p < ports.size(); ++p) {
      if (!ports[p]) continue;
      PortRef from{machine, p};
      if (const auto* dest = table.find(from)) writes.push_back({std::move(from), *dest, *ports[p]});
    }
  }
  return writes;
}

}  // namespace ntm
