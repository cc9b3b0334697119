#include "ntm/tree.hpp"

#include "ntm/error.hpp"
#include "ntm/event_log_io.hpp"

namespace ntm {

using nlohmann::json;

namespace {

json header(const char* schema) { return json{{"schema", schema}, {"version", kTreeVersion}}; }

template <class F>
auto reading(const json& j, const char* schema, F&& body) {
  if (!j.is_object() || j.value("schema", "") != schema) {
    throw Error(Errc::FormatError, std::string("expected a '") + schema + "' tree");
  }
  if (j.value("version", 0) != kTreeVersion) {
    throw Error(Errc::FormatError, std::string(schema) + ": unsupported version");
  }
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, std::string(schema) + ": " + e.what());
  }
}

json symbols(std::span<const Symbol> s) {
  json out = json::array();
  for (const auto& x : s) out.push_back(x.str());
  return out;
}

std::vector<Symbol> symbols_from(const json& j) {
  std::vector<Symbol> out;
  for (const auto& x : j) out.emplace_back(x.get<std::string>());
  return out;
}

Endpoint endpoint_from(const std::string& s) {
  if (s.size() >= 3 && s.front() == '[' && s.back() == ']') return {EndpointKind::Procedure, s.substr(1, s.size() - 2)};
  if (s.size() >= 3 && s.front() == '(' && s.back() == ')') return {EndpointKind::Context, s.substr(1, s.size() - 2)};
  throw Error(Errc::FormatError, "bad endpoint '" + s + "'");
}

json edge_tree(const LabeledEdge& e) { return json{{"from", e.from.str()}, {"to", e.to.str()}}; }

LabeledEdge edge_from(const json& j) {
  return {endpoint_from(j.at("from").get<std::string>()), endpoint_from(j.at("to").get<std::string>())};
}

}  // namespace

json to_tree(const Graph& g) {
  json j = header("ntm-graph");
  j["nodes"] = json::array();
  for (const auto& n : g.nodes) {
    j["nodes"].push_back(
        {{"kind", n.kind == NodeKind::Procedure ? "procedure" : "context"}, {"key", n.key}, {"label", n.label}});
  }
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}});
  return j;
}

Graph graph_from_tree(const json& j) {
  return reading(j, "ntm-graph", [&] {
    Graph g;
    for (const auto& n : j.at("nodes")) {
      const auto kind = n.at("kind").get<std::string>();
      if (kind != "procedure" && kind != "context") throw Error(Errc::FormatError, "bad node kind '" + kind + "'");
      g.nodes.push_back({kind == "procedure" ? NodeKind::Procedure : NodeKind::Context, n.at("key").get<std::string>(),
                         n.at("label").get<std::string>()});
    }
    for (const auto& e : j.at("edges")) g.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>()});
    return g;
  });
}

json to_tree(const RunResult& r) {
  json j = header("ntm-run-result");
  j["halt_reason"] = to_string(r.halt_reason);
  j["ticks"] = r.ticks;
  json machines = json::object();
  for (const auto& [id, m] : r.machines) {
    json work = json::array();
    for (const auto& t : m.work_tapes) work.push_back({{"cells", symbols(t.contents())}, {"head", t.head()}});
    json inputs = json::array();
    for (const auto& t : m.input_tapes) inputs.push_back({{"cells", symbols(t.cells())}, {"read_head", t.read_head()}});
    machines[id] = {{"state", m.current_state},
                    {"halted", m.halted},
                    {"transitions", m.transitions_executed},
                    {"work_tapes", work},
                    {"input_tapes", inputs}};
  }
  j["machines"] = machines;
  json sinks = json::object();
  for (const auto& [id, stream] : r.sinks) {
    json records = json::array();
    for (const auto& rec : stream) records.push_back(json::array({rec.tick, rec.symbol.str()}));
    sinks[id] = records;
  }
  j["sinks"] = sinks;
  json events = json::array();
  for (const auto& ev : r.log.events) events.push_back(event_to_json(ev));
  j["log"] = {{"micro_resolution", r.log.micro_resolution}, {"events", events}, {"end", nullptr}};
  if (r.log.end) j["log"]["end"] = {{"reason", to_string(r.log.end->reason)}, {"tick", r.log.end->tick}};
  return j;
}

RunResult run_result_from_tree(const json& j, const Network& n) {
  return reading(j, "ntm-run-result", [&] {
    RunResult r;
    r.halt_reason = halt_reason_from_string(j.at("halt_reason").get<std::string>());
    r.ticks = j.at("ticks").get<std::uint64_t>();
    for (const auto& [id, mj] : j.at("machines").items()) {
      auto it = n.machines.find(id);
      if (it == n.machines.end()) throw Error(Errc::FormatError, "run result names unknown machine '" + id + "'");
      MachineState m = MachineState::initial(it->second);
      std::shared_ptr<const Alphabet> gamma(it->second, &it->second->tape_alphabet);
      m.current_state = mj.at("state").get<std::string>();
      m.halted = mj.at("halted").get<bool>();
      m.transitions_executed = mj.at("transitions").get<std::uint64_t>();
      m.work_tapes.clear();
      for (const auto& t : mj.at("work_tapes")) {
        m.work_tapes.emplace_back(symbols_from(t.at("cells")), t.at("head").get<std::size_t>());
      }
      m.input_tapes.clear();
      for (const auto& t : mj.at("input_tapes")) {
        m.input_tapes.push_back(
            InputTape::from_parts(gamma, symbols_from(t.at("cells")), t.at("read_head").get<std::size_t>()));
      }
      r.machines.emplace(id, std::move(m));
    }
    for (const auto& [id, records] : j.at("sinks").items()) {
      auto& stream = r.sinks[id];
      for (const auto& rec : records) stream.push_back({rec.at(0).get<std::uint64_t>(), Symbol(rec.at(1).get<std::string>())});
    }
    const json& log = j.at("log");
    r.log.micro_resolution = log.at("micro_resolution").get<std::uint64_t>();
    for (const auto& ev : log.at("events")) r.log.events.push_back(event_from_json(ev));
    if (!log.at("end").is_null()) {
      r.log.end = Termination{halt_reason_from_string(log["end"].at("reason").get<std::string>()),
                              log["end"].at("tick").get<std::uint64_t>()};
    }
    return r;
  });
}

json to_tree(const AwarenessReport& r) {
  json j = header("ntm-awareness-report");
  j["aware"] = r.aware;
  j["vacuous"] = r.vacuous;
  j["vectors"] = json::array();
  for (const auto& v : r.vectors) {
    j["vectors"].push_back({{"vector", v.vector},
                            {"status", to_string(v.status)},
                            {"binding", v.binding ? json(v.binding->str()) : json(nullptr)},
                            {"evaluations", v.evaluations},
                            {"consumed", v.consumed},
                            {"answered", v.answered}});
  }
  j["outbound"] = json::array();
  for (const auto& o : r.outbound) {
    j["outbound"].push_back({{"port", o.port.str()}, {"vector", o.vector}, {"emissions", o.emissions}});
  }
  return j;
}

AwarenessReport awareness_report_from_tree(const json& j) {
  return reading(j, "ntm-awareness-report", [&] {
    AwarenessReport r;
    r.aware = j.at("aware").get<bool>();
    r.vacuous = j.at("vacuous").get<bool>();
    for (const auto& v : j.at("vectors")) {
      VectorAwareness va;
      va.vector = v.at("vector").get<std::string>();
      va.status = vector_status_from_string(v.at("status").get<std::string>());
      if (!v.at("binding").is_null()) va.binding = PortRef::parse(v["binding"].get<std::string>());
      va.evaluations = v.at("evaluations").get<std::size_t>();
      va.consumed = v.at("consumed").get<std::size_t>();
      va.answered = v.at("answered").get<std::size_t>();
      r.vectors.push_back(std::move(va));
    }
    for (const auto& o : j.at("outbound")) {
      r.outbound.push_back({PortRef::parse(o.at("port").get<std::string>()), o.at("vector").get<std::string>(),
                            o.at("emissions").get<std::size_t>()});
    }
    return r;
  });
}

json to_tree(const EffectivenessReport& r) {
  json j = header("ntm-effectiveness-report");
  j["full"] = r.full;
  j["reduced"] = r.reduced;
  j["degenerate"] = r.degenerate;
  j["per_sink"] = json::array();
  for (const auto& s : r.per_sink) j["per_sink"].push_back({{"sink", s.sink}, {"score", s.score}});
  j["score"] = r.score;
  j["threshold"] = r.threshold;
  j["effective"] = r.effective;
  j["warnings"] = r.warnings;
  return j;
}

EffectivenessReport effectiveness_report_from_tree(const json& j) {
  return reading(j, "ntm-effectiveness-report", [&] {
    EffectivenessReport r;
    r.full = j.at("full").get<std::vector<std::string>>();
    r.reduced = j.at("reduced").get<std::vector<std::string>>();
    r.degenerate = j.at("degenerate").get<bool>();
    for (const auto& s : j.at("per_sink")) r.per_sink.push_back({s.at("sink").get<std::string>(), s.at("score").get<double>()});
    r.score = j.at("score").get<double>();
    r.threshold = j.at("threshold").get<double>();
    r.effective = j.at("effective").get<bool>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  });
}

json to_tree(const RefinementReport& r) {
  json j = header("ntm-refinement-report");
  j["valid"] = r.valid();
  j["coarse_edges"] = json::array();
  for (const auto& c : r.coarse_edges) {
    json w = json::array();
    for (const auto& e : c.witnesses) w.push_back(edge_tree(e));
    j["coarse_edges"].push_back({{"edge", edge_tree(c.edge)}, {"realized", c.realized()}, {"witnesses", w}});
  }
  j["extraneous"] = json::array();
  for (const auto& e : r.extraneous) j["extraneous"].push_back(edge_tree(e));
  j["unmapped_fine"] = r.unmapped_fine;
  return j;
}

RefinementReport refinement_report_from_tree(const json& j) {
  return reading(j, "ntm-refinement-report", [&] {
    RefinementReport r;
    for (const auto& c : j.at("coarse_edges")) {
      CoarseEdgeCheck check{edge_from(c.at("edge")), {}};
      for (const auto& w : c.at("witnesses")) check.witnesses.push_back(edge_from(w));
      r.coarse_edges.push_back(std::move(check));
    }
    for (const auto& e : j.at("extraneous")) r.extraneous.push_back(edge_from(e));
    r.unmapped_fine = j.at("unmapped_fine").get<std::vector<std::string>>();
    return r;
  });
}

}  // namespace ntm
