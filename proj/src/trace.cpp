#include "ntm/trace.hpp"

#include <algorithm>

#include "ntm/error.hpp"

namespace ntm {

const EvaluationVector* ContextTrace::find_vector(const std::string& id) const {
  for (const auto& v : vectors) {
    if (v.variable == id) return &v;
  }
  return nullptr;
}

std::vector<std::string> trace_problems(const ContextTrace& trace, const Network* n) {
  std::vector<std::string> problems;
  std::set<std::string> variable_ids, vector_ids;
  for (const auto& v : trace.variables) {
    if (v.id.empty()) problems.push_back("variable with empty id");
    if (!variable_ids.insert(v.id).second) problems.push_back("variable '" + v.id + "' declared twice");
  }
  for (const auto& vec : trace.vectors) {
    if (!variable_ids.contains(vec.variable)) problems.push_back("vector for undeclared variable '" + vec.variable + "'");
    if (!vector_ids.insert(vec.variable).second) problems.push_back("two vectors for '" + vec.variable + "'");
    for (std::size_t k = 0; k < vec.evaluations.size(); ++k) {
      if (k > 0 && vec.evaluations[k].time <= vec.evaluations[k - 1].time) {
        problems.push_back("vector '" + vec.variable + "': times not strictly increasing at " + std::to_string(k));
      }
      if (vec.evaluations[k].value.empty()) {
        problems.push_back("vector '" + vec.variable + "': empty value at " + std::to_string(k));
      }
    }
  }
  for (const auto& id : trace.awareness_subset) {
    if (!vector_ids.contains(id)) problems.push_back("C_A names unknown vector '" + id + "'");
  }
  std::map<PortRef, std::string> tape_owner;
  for (const auto& [id, tape] : trace.bindings_in) {
    if (!vector_ids.contains(id)) problems.push_back("binding for unknown vector '" + id + "'");
    if (auto [it, fresh] = tape_owner.emplace(tape, id); !fresh) {
      problems.push_back("vectors '" + it->second + "' and '" + id + "' bound to the same tape " + tape.str());
    }
    if (n) {
      const auto* spec = n->find(tape.machine);
      if (!spec || tape.index >= spec->num_inputs) problems.push_back("binding of '" + id + "' to missing tape " + tape.str());
    }
  }
  for (const auto& [port, id] : trace.bindings_out) {
    if (!vector_ids.contains(id)) problems.push_back("outbound binding to unknown vector '" + id + "'");
    if (n) {
      const auto* spec = n->find(port.machine);
      if (!spec || port.index >= spec->num_outputs) problems.push_back("outbound binding from missing port " + port.str());
    }
  }
  return problems;
}

Symbol Encoding::encode(char c) const {
  if (const auto it = overrides.find(c); it != overrides.end()) return it->second;
  const std::string token(1, c);
  if (!is_valid_token(token)) throw Error(Errc::UnencodableValue, "character '" + token + "' has no symbol");
  return Symbol(token);
}

Network admit_delimiter(Network n, const ContextTrace& trace, const Encoding& encoding) {
  std::set<std::string> bound;
  for (const auto& [id, tape] : trace.bindings_in) bound.insert(tape.machine);
  for (const auto& id : bound) {
    const auto it = n.machines.find(id);
    if (it == n.machines.end()) continue;
    if (it->second->tape_alphabet.contains(encoding.delimiter) &&
        it->second->input_alphabet.contains(encoding.delimiter)) {
      continue;
    }
    MachineSpec spec = *it->second;
    spec.input_alphabet.insert(encoding.delimiter);
    spec.tape_alphabet.insert(encoding.delimiter);
    it->second = std::make_shared<const MachineSpec>(std::move(spec));
  }
  return n;
}

std::string trace_source_id(const std::string& vector) { return "ctx:" + vector; }

std::vector<ExternalSource> encode_trace(const ContextTrace& trace, const Network& n, const Encoding& encoding,
                                         const std::set<std::string>* include) {
  std::vector<ExternalSource> sources;
  for (const auto& [id, tape] : trace.bindings_in) {
    if (include && !include->contains(id)) continue;
    const auto* spec = n.find(tape.machine);
    if (!spec || tape.index >= spec->num_inputs) {
      throw Error(Errc::InvalidNetwork, "vector '" + id + "' bound to missing tape " + tape.str());
    }
    const auto* vec = trace.find_vector(id);
    if (!vec) throw Error(Errc::InvalidArgument, "binding for unknown vector '" + id + "'");
    if (!spec->tape_alphabet.contains(encoding.delimiter)) {
      throw Error(Errc::UnencodableValue, "delimiter '" + encoding.delimiter.str() + "' not in the alphabet of '" +
                                              spec->id + "' (see admit_delimiter)");
    }
    ExternalSource src{trace_source_id(id), tape, {}};
    for (const auto& eval : vec->evaluations) {
      for (char c : eval.value) {
        const Symbol s = encoding.encode(c);
        if (s == encoding.delimiter || !spec->tape_alphabet.contains(s)) {
          throw Error(Errc::UnencodableValue, "vector '" + id + "': character '" + std::string(1, c) +
                                                  "' is not a symbol of '" + spec->id + "'");
        }
        src.schedule.push_back({eval.time, s});
      }
      src.schedule.push_back({eval.time, encoding.delimiter});
    }
    sources.push_back(std::move(src));
  }
  return sources;
}

}  // namespace ntm
