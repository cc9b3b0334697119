#include "ntm/event_log_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ntm/error.hpp"

namespace ntm {

using nlohmann::json;

json event_to_json(const Event& ev) {
  json j;
  j["tick"] = ev.tick;
  j["machine"] = ev.machine;
  j["kind"] = to_string(ev.kind());
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TransitionEvent>) {
          j["from"] = p.from;
          j["to"] = p.to;
          j["rule"] = p.rule;
          j["consumed"] = p.consumed;
        } else if constexpr (std::is_same_v<T, IdleEvent> || std::is_same_v<T, HaltEvent>) {
          j["state"] = p.state;
        } else if constexpr (std::is_same_v<T, InjectEvent>) {
          j["source"] = p.source;
          j["tape"] = p.tape;
          j["symbol"] = p.symbol.str();
        } else if constexpr (std::is_same_v<T, RouteEvent>) {
          j["port"] = p.port;
          j["symbol"] = p.symbol.str();
          if (p.to.is_sink()) j["sink"] = p.to.sink();
          else j["to"] = p.to.tape().str();
        } else if constexpr (std::is_same_v<T, ReadBlankEvent>) {
          j["tape"] = p.tape;
        }
      },
      ev.payload);
  return j;
}

Event event_from_json(const json& j) {
  Event ev;
  ev.tick = j.at("tick").get<std::uint64_t>();
  ev.machine = j.at("machine").get<std::string>();
  switch (event_kind_from_string(j.at("kind").get<std::string>())) {
    case EventKind::Transition:
      ev.payload = TransitionEvent{j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                                   j.at("rule").get<std::size_t>(), j.at("consumed").get<std::vector<std::size_t>>()};
      break;
    case EventKind::Idle: ev.payload = IdleEvent{j.at("state").get<std::string>()}; break;
    case EventKind::Halt: ev.payload = HaltEvent{j.at("state").get<std::string>()}; break;
    case EventKind::Inject:
      ev.payload = InjectEvent{j.at("source").get<std::string>(), j.at("tape").get<std::size_t>(),
                               Symbol(j.at("symbol").get<std::string>())};
      break;
    case EventKind::Route: {
      Destination to = j.contains("sink") ? Destination{j.at("sink").get<std::string>()}
                                          : Destination{PortRef::parse(j.at("to").get<std::string>())};
      ev.payload = RouteEvent{j.at("port").get<std::size_t>(), Symbol(j.at("symbol").get<std::string>()), to};
      break;
    }
    case EventKind::ReadBlank: ev.payload = ReadBlankEvent{j.at("tape").get<std::size_t>()}; break;
  }
  return ev;
}

void write_event_log(std::ostream& out, const EventLog& log) {
  json header;
  header["format"] = "ntm-event-log";
  header["version"] = kEventLogVersion;
  header["micro_resolution"] = log.micro_resolution;
  out << header.dump() << '\n';
  for (const auto& ev : log.events) out << event_to_json(ev).dump() << '\n';
  if (log.end) {
    json trailer;
    trailer["end"] = to_string(log.end->reason);
    trailer["tick"] = log.end->tick;
    out << trailer.dump() << '\n';
  }
}

EventLog read_event_log(std::istream& in) {
  EventLog log;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("format", "") != "ntm-event-log") throw Error(Errc::FormatError, "missing log header");
        if (j.at("version").get<int>() != kEventLogVersion) {
          throw Error(Errc::FormatError, "unsupported log version " + j.at("version").dump());
        }
        log.micro_resolution = j.at("micro_resolution").get<std::uint64_t>();
        have_header = true;
        continue;
      }
      if (log.end) throw Error(Errc::FormatError, "line " + std::to_string(line_no) + ": data after trailer");
      if (j.contains("end")) {
        log.end = Termination{halt_reason_from_string(j.at("end").get<std::string>()), j.at("tick").get<std::uint64_t>()};
        continue;
      }
      log.events.push_back(event_from_json(j));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, "event log line " + std::to_string(line_no) + ": " + e.what());
  }
  if (!have_header) throw Error(Errc::FormatError, "empty event log");
  return log;
}

}  // namespace ntm
