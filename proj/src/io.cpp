#include "ntm/io.hpp"

#include <fstream>
#include <sstream>

#include "ntm/error.hpp"

namespace ntm {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FormatError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, "'" + path.string() + "': " + e.what());
  }
}

namespace {

SymbolPattern pattern_from(const json& j) {
  const auto token = j.get<std::string>();
  if (token == Symbol::kWildcardToken) return std::nullopt;
  return Symbol(token);
}

json pattern_to(const SymbolPattern& p) { return p ? p->str() : std::string(Symbol::kWildcardToken); }

Alphabet alphabet_from(const json& j) {
  Alphabet a;
  for (const auto& s : j) a.insert(Symbol(s.get<std::string>()));
  return a;
}

json alphabet_to(const Alphabet& a) {
  json j = json::array();
  for (const auto& s : a) j.push_back(s.str());
  return j;
}

HeadMove move_from(const json& j) {
  const auto text = j.get<std::string>();
  if (text.size() != 1) throw Error(Errc::FormatError, "bad head move '" + text + "'");
  return head_move_from_char(text[0]);
}

// Working-tape fields are scalars for single-tape machines, arrays otherwise.
template <class T, class F>
std::vector<T> per_work_tape(const json& j, F convert) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(convert(e));
  } else {
    out.push_back(convert(j));
  }
  return out;
}

template <class T, class F>
json work_field(const std::vector<T>& values, F convert) {
  if (values.size() == 1) return convert(values[0]);
  json j = json::array();
  for (const auto& v : values) j.push_back(convert(v));
  return j;
}

}  // namespace

MachineSpec machine_from_json(const json& j) {
  MachineSpec spec;
  try {
    spec.id = j.at("id").get<std::string>();
    for (const auto& s : j.at("states")) spec.states.insert(s.get<std::string>());
    spec.input_alphabet = alphabet_from(j.at("input_alphabet"));
    spec.tape_alphabet = alphabet_from(j.at("tape_alphabet"));
    spec.num_inputs = j.at("num_inputs").get<std::size_t>();
    spec.num_outputs = j.at("num_outputs").get<std::size_t>();
    spec.num_work_tapes = j.value("work_tapes", std::size_t{1});
    spec.start_state = j.at("start").get<std::string>();
    spec.halt_state = j.at("halt").get<std::string>();
    spec.speed = j.value("speed", 1u);
    if (j.contains("feedback")) {
      for (const auto& f : j.at("feedback")) {
        spec.feedback.push_back({f.at("port").get<std::size_t>(), f.at("tape").get<std::size_t>()});
      }
    }
    for (const auto& r : j.at("rules")) {
      TransitionRule rule;
      rule.state = r.at("state").get<std::string>();
      rule.match_work = per_work_tape<SymbolPattern>(r.at("work"), pattern_from);
      for (const auto& p : r.at("inputs")) rule.match_inputs.push_back(pattern_from(p));
      rule.next_state = r.at("next").get<std::string>();
      rule.work_write = per_work_tape<Symbol>(r.at("write"), [](const json& e) { return Symbol(e.get<std::string>()); });
      rule.work_move = per_work_tape<HeadMove>(r.at("move"), move_from);
      for (const auto& m : r.at("input_moves")) rule.input_moves.push_back(move_from(m));
      for (const auto& o : r.at("outputs")) {
        rule.outputs.push_back(o.is_null() ? Emission{} : Emission{Symbol(o.get<std::string>())});
      }
      spec.rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, "machine '" + spec.id + "': " + e.what());
  }
  validate_machine(spec);
  return spec;
}

json to_json(const MachineSpec& spec) {
  json j;
  j["id"] = spec.id;
  j["states"] = spec.states;
  j["input_alphabet"] = alphabet_to(spec.input_alphabet);
  j["tape_alphabet"] = alphabet_to(spec.tape_alphabet);
  j["num_inputs"] = spec.num_inputs;
  j["num_outputs"] = spec.num_outputs;
  if (spec.num_work_tapes != 1) j["work_tapes"] = spec.num_work_tapes;
  j["start"] = spec.start_state;
  j["halt"] = spec.halt_state;
  j["speed"] = spec.speed;
  if (!spec.feedback.empty()) {
    json fb = json::array();
    for (const auto& f : spec.feedback) fb.push_back({{"port", f.port}, {"tape", f.tape}});
    j["feedback"] = fb;
  }
  json rules = json::array();
  for (const auto& rule : spec.rules) {
    json r;
    r["state"] = rule.state;
    r["work"] = work_field(rule.match_work, pattern_to);
    json inputs = json::array();
    for (const auto& p : rule.match_inputs) inputs.push_back(pattern_to(p));
    r["inputs"] = inputs;
    r["next"] = rule.next_state;
    r["write"] = work_field(rule.work_write, [](const Symbol& s) { return json(s.str()); });
    r["move"] = work_field(rule.work_move, [](HeadMove m) { return json(std::string(1, to_char(m))); });
    json moves = json::array();
    for (auto m : rule.input_moves) moves.push_back(std::string(1, to_char(m)));
    r["input_moves"] = moves;
    json outputs = json::array();
    for (const auto& o : rule.outputs) outputs.push_back(o ? json(o->str()) : json(nullptr));
    r["outputs"] = outputs;
    rules.push_back(r);
  }
  j["rules"] = rules;
  return j;
}

Network network_from_json(const json& j, const std::filesystem::path& base_dir) {
  Network n;
  try {
    for (const auto& entry : j.at("machines")) {
      MachineSpec spec = entry.is_string() ? machine_from_json(read_json_file(base_dir / entry.get<std::string>()))
                                           : machine_from_json(entry);
      if (n.find(spec.id)) throw Error(Errc::FormatError, "machine '" + spec.id + "' listed twice");
      n.add_machine(std::move(spec));
    }
    for (const auto& c : j.value("connections", json::array())) {
      n.connections.push_back({PortRef::parse(c.at("from").get<std::string>()),
                               PortRef::parse(c.at("to").get<std::string>())});
    }
    for (const auto& s : j.value("sources", json::array())) {
      ExternalSource src{s.at("id").get<std::string>(), PortRef::parse(s.at("to").get<std::string>()), {}};
      for (const auto& e : s.value("schedule", json::array())) {
        src.schedule.push_back({e.at(0).get<std::uint64_t>(), Symbol(e.at(1).get<std::string>())});
      }
      n.sources.push_back(std::move(src));
    }
    for (const auto& s : j.value("sinks", json::array())) {
      n.sinks.push_back({s.at("id").get<std::string>(), PortRef::parse(s.at("from").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, std::string("network: ") + e.what());
  }
  return n;
}

Network load_network(const std::filesystem::path& path) {
  return network_from_json(read_json_file(path), path.parent_path());
}

json to_json(const Network& n) {
  json j;
  json machines = json::array();
  for (const auto& [id, spec] : n.machines) machines.push_back(to_json(*spec));
  j["machines"] = machines;
  json connections = json::array();
  for (const auto& c : n.connections) connections.push_back({{"from", c.from.str()}, {"to", c.to.str()}});
  j["connections"] = connections;
  json sources = json::array();
  for (const auto& s : n.sources) {
    json schedule = json::array();
    for (const auto& e : s.schedule) schedule.push_back(json::array({e.time, e.symbol.str()}));
    sources.push_back({{"id", s.id}, {"to", s.to.str()}, {"schedule", schedule}});
  }
  j["sources"] = sources;
  json sinks = json::array();
  for (const auto& s : n.sinks) sinks.push_back({{"id", s.id}, {"from", s.from.str()}});
  j["sinks"] = sinks;
  return j;
}

ContextTrace trace_from_json(const json& j) {
  ContextTrace t;
  try {
    for (const auto& v : j.at("variables")) {
      t.variables.push_back({v.at("id").get<std::string>(), v.value("name", v.at("id").get<std::string>()),
                             v.value("description", std::string{})});
    }
    for (const auto& v : j.at("vectors")) {
      EvaluationVector vec{v.at("var").get<std::string>(), {}};
      for (const auto& e : v.at("evals")) vec.evaluations.push_back({e.at(0).get<std::uint64_t>(), e.at(1).get<std::string>()});
      t.vectors.push_back(std::move(vec));
    }
    t.awareness_subset = j.value("c_a", std::vector<std::string>{});
    const json in = j.value("bindings_in", json::object());
    for (const auto& [id, tape] : in.items()) t.bindings_in.emplace(id, PortRef::parse(tape.get<std::string>()));
    const json out = j.value("bindings_out", json::object());
    for (const auto& [port, id] : out.items()) {
      t.bindings_out.emplace(PortRef::parse(port), id.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, std::string("trace: ") + e.what());
  }
  if (const auto problems = trace_problems(t); !problems.empty()) {
    throw Error(Errc::FormatError, "trace: " + problems.front());
  }
  return t;
}

ContextTrace load_trace(const std::filesystem::path& path) { return trace_from_json(read_json_file(path)); }

json to_json(const ContextTrace& t) {
  json j;
  json vars = json::array();
  for (const auto& v : t.variables) vars.push_back({{"id", v.id}, {"name", v.name}, {"description", v.description}});
  j["variables"] = vars;
  json vectors = json::array();
  for (const auto& v : t.vectors) {
    json evals = json::array();
    for (const auto& e : v.evaluations) evals.push_back(json::array({e.time, e.value}));
    vectors.push_back({{"var", v.variable}, {"evals", evals}});
  }
  j["vectors"] = vectors;
  j["c_a"] = t.awareness_subset;
  json in = json::object();
  for (const auto& [id, tape] : t.bindings_in) in[id] = tape.str();
  j["bindings_in"] = in;
  json out = json::object();
  for (const auto& [port, id] : t.bindings_out) out[port.str()] = id;
  j["bindings_out"] = out;
  return j;
}

std::map<std::string, std::set<std::string>> load_refinement_map(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  std::map<std::string, std::set<std::string>> mapping;
  try {
    for (const auto& [coarse, fine] : j.items()) mapping[coarse] = fine.get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw Error(Errc::FormatError, "'" + path.string() + "': " + e.what());
  }
  return mapping;
}

}  // namespace ntm
