#pragma once

#include <iosfwd>

#include <json.hpp>

#include "ntm/scheduler.hpp"

namespace ntm {

inline constexpr int kEventLogVersion = 1;

/// One event as a JSON object (the per-line record of the log).
nlohmann::json event_to_json(const Event& ev);
Event event_from_json(const nlohmann::json& j);

/// JSON Lines. Line 1 is the header
///   {"format":"ntm-event-log","micro_resolution":R,"version":1}
/// then one event per line, then (for complete runs) the trailer
///   {"end":"<halt reason>","tick":T}
/// Keys are sorted and output is compact, so equal logs are byte-identical.
/// The per-kind fields are documented in docs/formats.md.
void write_event_log(std::ostream& out, const EventLog& log);

/// Throws FormatError on malformed input or an unsupported version.
EventLog read_event_log(std::istream& in);

}  // namespace ntm
