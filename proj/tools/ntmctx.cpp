// ntmctx: batch front end for models, networks and context traces.
//
// Exit codes: 0 success, 1 findings or a negative verdict, 2 usage or I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ntm/awareness.hpp"
#include "ntm/dot.hpp"
#include "ntm/error.hpp"
#include "ntm/event_log_io.hpp"
#include "ntm/graph.hpp"
#include "ntm/io.hpp"
#include "ntm/model.hpp"
#include "ntm/tree.hpp"

namespace fs = std::filesystem;
using namespace ntm;

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

SystemModel load_model(const std::string& path) {
  try {
    return parse_model(read_text_file(path));
  } catch (const ParseError& e) {
    throw Error(e.code(), path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.detail());
  }
}

bool is_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

std::string fixed(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<ExternalSource> trace_sources(Network& n, const std::string& trace_path, const Encoding& enc) {
  if (trace_path.empty()) return {};
  const ContextTrace trace = load_trace(trace_path);
  n = admit_delimiter(std::move(n), trace, enc);
  return encode_trace(trace, n, enc);
}

void print_awareness(const AwarenessReport& r) {
  std::cout << "aware: " << (r.aware ? "yes" : "no") << (r.vacuous ? " (vacuous: C_A is empty)" : "") << '\n';
  for (const auto& v : r.vectors) {
    std::cout << "  " << v.vector << ": " << to_string(v.status) << " binding="
              << (v.binding ? v.binding->str() : std::string("none")) << " consumed=" << v.consumed << '/'
              << v.evaluations << " answered=" << v.answered << '\n';
  }
  for (const auto& o : r.outbound) {
    std::cout << "  out " << o.port.str() << " -> " << o.vector << ": " << o.emissions << " emission(s)\n";
  }
}

void print_effectiveness(const EffectivenessReport& r) {
  auto set = [](const std::vector<std::string>& ids) {
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + ids[i];
    return s + "}";
  };
  std::cout << "C_A = " << set(r.full) << "  C_A' = " << set(r.reduced) << '\n';
  for (const auto& s : r.per_sink) std::cout << "  sink " << s.sink << ": " << fixed(s.score) << '\n';
  std::cout << "score " << fixed(r.score) << " threshold " << fixed(r.threshold) << ": "
            << (r.effective ? "effective" : "not effective") << '\n';
  for (const auto& w : r.warnings) std::cout << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Networked Turing machine models: parse, validate, simulate and check context-awareness"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  std::string file, net_path, trace_path, log_path, speeds, subset, map_path, coarse_path, fine_path;
  std::string format = "dot";
  bool include_isolated = false, json_out = false, strict = false;
  std::uint64_t steps = kDefaultBudget;
  double threshold = 0.8;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a model and print its canonical form");
  parse_cmd->add_option("FILE", file, "Model document")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Validate a model (.ctx) or a network (.json)");
  validate_cmd->add_option("FILE", file, "Model document or network file")->required();

  auto* graph_cmd = app.add_subcommand("graph", "Build the graph of a model");
  graph_cmd->add_option("FILE", file, "Model document")->required();
  graph_cmd->add_option("--format", format, "dot or tree")->check(CLI::IsMember({"dot", "tree"}));
  graph_cmd->add_flag("--include-isolated", include_isolated, "Keep declared nodes without connections");

  auto* sim_cmd = app.add_subcommand("simulate", "Run a network");
  sim_cmd->add_option("NET", net_path, "Network file")->required();
  sim_cmd->add_option("--trace", trace_path, "Context trace to inject");
  sim_cmd->add_option("--steps", steps, "Global step budget");
  sim_cmd->add_option("--speeds", speeds, "Speed overrides, e.g. m0=1,m1=2");
  sim_cmd->add_option("--log", log_path, "Write the event log here ('-' for stdout)");
  sim_cmd->add_flag("--json", json_out, "Print the run result as a tree");

  auto* aware_cmd = app.add_subcommand("check-awareness", "Check that a network is context-aware");
  aware_cmd->add_option("NET", net_path, "Network file")->required();
  aware_cmd->add_option("TRACE", trace_path, "Context trace")->required();
  aware_cmd->add_option("--steps", steps, "Global step budget");
  aware_cmd->add_flag("--strict-bindings", strict, "Fail on C_A vectors without an input binding");
  aware_cmd->add_flag("--json", json_out, "Print the report as a tree");

  auto* eff_cmd = app.add_subcommand("check-effective", "Compare outputs under a reduced context C_A'");
  eff_cmd->add_option("NET", net_path, "Network file")->required();
  eff_cmd->add_option("TRACE", trace_path, "Context trace")->required();
  eff_cmd->add_option("--subset", subset, "Comma-separated vector ids forming C_A'")->required();
  eff_cmd->add_option("--threshold", threshold, "Minimum similarity")->check(CLI::Range(0.0, 1.0));
  eff_cmd->add_option("--steps", steps, "Global step budget");
  eff_cmd->add_flag("--json", json_out, "Print the report as a tree");

  auto* refine_cmd = app.add_subcommand("refine", "Check that FINE refines COARSE");
  refine_cmd->add_option("COARSE", coarse_path, "Coarse model")->required();
  refine_cmd->add_option("FINE", fine_path, "Fine model")->required();
  refine_cmd->add_option("--map", map_path, "Refinement map (JSON)")->required();
  refine_cmd->add_flag("--json", json_out, "Print the report as a tree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*parse_cmd) {
      std::cout << print_model(load_model(file));
      return kOk;
    }
    if (*validate_cmd) {
      if (is_json(file)) {
        const auto report = validate_network(load_network(file));
        for (const auto& v : report.violations) std::cout << to_string(v.kind) << ": " << v.message << '\n';
        if (report.valid()) std::cout << "ok\n";
        return report.valid() ? kOk : kFindings;
      }
      const SystemModel m = load_model(file);
      const auto report = validate_model(m);
      std::cout << format_report(report);
      if (report.clean()) {
        std::cout << "ok: " << m.procedures.size() << " procedures, " << m.contexts.size() << " contexts, "
                  << m.connections.size() << " connections\n";
      }
      return report.clean() ? kOk : kFindings;
    }
    if (*graph_cmd) {
      const Graph g = build_graph(load_model(file), {include_isolated});
      std::cout << render(g, {render_format_from_string(format), "G"});
      return kOk;
    }
    if (*sim_cmd) {
      Network n = load_network(net_path);
      const auto sources = trace_sources(n, trace_path, Encoding{});
      const ClockConfig clocks = ClockConfig::from_network(n, parse_speeds(speeds));
      const RunResult r = run(n, clocks, sources, steps);
      if (log_path == "-") {
        write_event_log(std::cout, r.log);
      } else if (!log_path.empty()) {
        std::ofstream out(log_path, std::ios::binary);
        if (!out) throw Error(Errc::FormatError, "cannot write '" + log_path + "'");
        write_event_log(out, r.log);
      }
      if (json_out) {
        std::cout << to_tree(r).dump(2) << '\n';
      } else if (log_path != "-") {
        std::cout << "halt: " << to_string(r.halt_reason) << " after " << r.ticks << " micro-ticks (resolution "
                  << r.log.micro_resolution << ")\n";
        for (const auto& [id, stream] : r.sinks) {
          std::cout << "sink " << id << ":";
          for (const auto& rec : stream) std::cout << ' ' << rec.symbol.str();
          std::cout << '\n';
        }
      }
      return kOk;
    }
    if (*aware_cmd) {
      const Network n = load_network(net_path);
      const ContextTrace trace = load_trace(trace_path);
      AwarenessOptions options;
      options.require_bindings = strict;
      const auto report = run_and_check_awareness(n, trace, steps, options);
      if (json_out) std::cout << to_tree(report).dump(2) << '\n';
      else print_awareness(report);
      return report.aware ? kOk : kFindings;
    }
    if (*eff_cmd) {
      const Network n = load_network(net_path);
      const ContextTrace trace = load_trace(trace_path);
      SimilarityConfig config;
      config.threshold = threshold;
      config.budget = steps;
      const auto ids = split_list(subset);
      const auto report = check_effective(n, trace, ids, config);
      if (json_out) std::cout << to_tree(report).dump(2) << '\n';
      else print_effectiveness(report);
      return report.effective ? kOk : kFindings;
    }
    if (*refine_cmd) {
      const auto report = refine_check(load_model(coarse_path), load_model(fine_path), load_refinement_map(map_path));
      if (json_out) std::cout << to_tree(report).dump(2) << '\n';
      else std::cout << format_report(report);
      return report.valid() ? kOk : kFindings;
    }
  } catch (const Error& e) {
    std::cerr << "ntmctx: " << e.what() << '\n';
    return e.code() == Errc::FormatError || e.code() == Errc::InvalidArgument ? kUsage : kFindings;
  }
  return kUsage;
}
