#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include <json.hpp>

#include "ntm/machine.hpp"
#include "ntm/network.hpp"
#include "ntm/trace.hpp"

namespace ntm {

/// Reads a whole file. Throws FormatError naming the path.
std::string read_text_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Machine description files. See docs/formats.md for the grammar.
MachineSpec machine_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MachineSpec& spec);

// Network files. Machine entries are file names (relative to `base_dir`) or
// inline machine objects.
Network network_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
Network load_network(const std::filesystem::path& path);
nlohmann::json to_json(const Network& n);

ContextTrace trace_from_json(const nlohmann::json& j);
ContextTrace load_trace(const std::filesystem::path& path);
nlohmann::json to_json(const ContextTrace& trace);

/// `{"coarse_label": ["fine_label", ...], ...}`
std::map<std::string, std::set<std::string>> load_refinement_map(const std::filesystem::path& path);

}  // namespace ntm
