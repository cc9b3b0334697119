#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli_runner.hpp"
#include "ntm/event_log_io.hpp"
#include "ntm/io.hpp"
#include "ntm/model.hpp"

using namespace ntm;
using ntm::testing::fixture_path;
using ntm::testing::run_ntmctx;

TEST_CASE("parse prints the canonical form") {
  const auto r = run_ntmctx({"parse", fixture_path("model1.ctx")});
  CHECK(r.exit_code == 0);
  CHECK(r.out == print_model(parse_model(read_text_file(fixture_path("model1.ctx")))));
  CHECK(run_ntmctx({"parse", fixture_path("missing.ctx")}).exit_code == 2);
}

TEST_CASE("validate reports findings through the exit code") {
  const auto ok = run_ntmctx({"validate", fixture_path("model2.ctx")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok: 8 procedures, 4 contexts, 12 connections\n");

  const auto broken = run_ntmctx({"validate", fixture_path("broken.ctx")});
  CHECK(broken.exit_code == 1);
  CHECK(broken.out.find("undeclared label") != std::string::npos);

  CHECK(run_ntmctx({"validate", fixture_path("model2_net.json")}).out == "ok\n");
  CHECK(run_ntmctx({"validate", fixture_path("model2_trace.json")}).exit_code == 2);
}

TEST_CASE("graph in both formats") {
  const auto dot = run_ntmctx({"graph", fixture_path("model1.ctx")});
  CHECK(dot.exit_code == 0);
  CHECK(dot.out.starts_with("digraph \"G\" {"));
  const auto tree = run_ntmctx({"graph", fixture_path("model2.ctx"), "--format", "tree"});
  CHECK(tree.exit_code == 0);
  const auto j = nlohmann::json::parse(tree.out);
  CHECK(j.at("edges").size() == 13);
  CHECK(run_ntmctx({"graph", fixture_path("model1.ctx"), "--format", "svg"}).exit_code == 2);
  CHECK(run_ntmctx({"graph", fixture_path("broken.ctx")}).exit_code == 1);
}

TEST_CASE("simulate writes the same log every time") {
  for (const char* net : {"feedback_counter.json", "pipeline_speeds.json", "model2_net.json"}) {
    CAPTURE(net);
    std::vector<std::string> args{"simulate", fixture_path(net), "--log", "-", "--steps", "40"};
    if (std::string(net) == "model2_net.json") {
      args.push_back("--trace");
      args.push_back(fixture_path("model2_trace.json"));
    }
    const auto first = run_ntmctx(args);
    const auto second = run_ntmctx(args);
    CHECK(first.exit_code == 0);
    CHECK_FALSE(first.out.empty());
    CHECK(first.out == second.out);
    std::istringstream in(first.out);
    CHECK(read_event_log(in).end.has_value());
  }

  const auto summary = run_ntmctx({"simulate", fixture_path("feedback_counter.json")});
  CHECK(summary.out.find("halt: all-halted") != std::string::npos);
  CHECK(summary.out.find("sink ticks: a a a\n") != std::string::npos);

  const auto overridden = run_ntmctx({"simulate", fixture_path("pipeline_speeds.json"), "--speeds", "fast=1", "--json"});
  CHECK(overridden.exit_code == 0);
  CHECK(nlohmann::json::parse(overridden.out).at("log").at("micro_resolution") == 2);
  CHECK(run_ntmctx({"simulate", fixture_path("pipeline_speeds.json"), "--speeds", "fast"}).exit_code == 2);
}

TEST_CASE("log files on disk match stdout") {
  const auto path = std::filesystem::temp_directory_path() / "ntmctx_cli_test.jsonl";
  const auto to_file = run_ntmctx({"simulate", fixture_path("pipeline_speeds.json"), "--log", path.string()});
  CHECK(to_file.exit_code == 0);
  const auto to_stdout = run_ntmctx({"simulate", fixture_path("pipeline_speeds.json"), "--log", "-"});
  CHECK(read_text_file(path) == to_stdout.out);
  std::filesystem::remove(path);
}

TEST_CASE("awareness verdicts") {
  const auto aware =
      run_ntmctx({"check-awareness", fixture_path("model2_net.json"), fixture_path("model2_trace.json")});
  CHECK(aware.exit_code == 0);
  CHECK(aware.out.starts_with("aware: yes"));

  const auto flipped =
      run_ntmctx({"check-awareness", fixture_path("model2_net.json"), fixture_path("model2_trace_no_location.json")});
  CHECK(flipped.exit_code == 1);
  CHECK(flipped.out.find("location: unconsumed") != std::string::npos);

  const auto strict = run_ntmctx({"check-awareness", fixture_path("model2_net.json"),
                                  fixture_path("model2_trace_no_location.json"), "--strict-bindings"});
  CHECK(strict.exit_code == 1);
  CHECK(strict.out.empty());

  const auto json = run_ntmctx(
      {"check-awareness", fixture_path("model2_net.json"), fixture_path("model2_trace.json"), "--json"});
  CHECK(nlohmann::json::parse(json.out).at("aware") == true);
}

TEST_CASE("effectiveness verdicts") {
  const auto kept = run_ntmctx({"check-effective", fixture_path("redundancy_net.json"),
                                fixture_path("redundancy_trace.json"), "--subset", "a"});
  CHECK(kept.exit_code == 0);
  const auto dropped = run_ntmctx({"check-effective", fixture_path("redundancy_net.json"),
                                   fixture_path("redundancy_trace.json"), "--subset", ""});
  CHECK(dropped.exit_code == 1);
  const auto bad = run_ntmctx({"check-effective", fixture_path("redundancy_net.json"),
                               fixture_path("redundancy_trace.json"), "--subset", "zzz"});
  CHECK(bad.exit_code == 1);
  CHECK(run_ntmctx({"check-effective", fixture_path("redundancy_net.json"), fixture_path("redundancy_trace.json"),
                    "--subset", "a", "--threshold", "1.5"})
            .exit_code == 2);
}

TEST_CASE("refine") {
  const auto ok = run_ntmctx({"refine", fixture_path("model1.ctx"), fixture_path("model2.ctx"), "--map",
                              fixture_path("model1_to_model2.map.json")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("8/8 coarse edges realized, 0 extraneous") != std::string::npos);
  const auto wrong_way = run_ntmctx({"refine", fixture_path("model2.ctx"), fixture_path("model1.ctx"), "--map",
                                     fixture_path("model1_to_model2.map.json")});
  CHECK(wrong_way.exit_code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run_ntmctx({}).exit_code == 2);
  CHECK(run_ntmctx({"frobnicate"}).exit_code == 2);
  CHECK(run_ntmctx({"simulate"}).exit_code == 2);
  CHECK(run_ntmctx({"--help"}).exit_code == 0);
}
