#include <doctest.h>

#include <algorithm>
#include <random>

#include "ntm/awareness.hpp"
#include "ntm/dot.hpp"
#include "ntm/error.hpp"
#include "ntm/graph.hpp"
#include "ntm/io.hpp"
#include "ntm/tree.hpp"

using namespace ntm;

namespace {

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(NTM_FIXTURE_DIR) / name; }

SystemModel load(const std::string& name) { return parse_model(read_text_file(fixture(name))); }

RefinementMap model_map() { return load_refinement_map(fixture("model1_to_model2.map.json")); }

LabeledEdge edge(Endpoint a, Endpoint b) { return {std::move(a), std::move(b)}; }
Endpoint proc(const std::string& l) { return {EndpointKind::Procedure, l}; }
Endpoint ctx(const std::string& l) { return {EndpointKind::Context, l}; }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

const CoarseEdgeCheck& coarse(const RefinementReport& r, const LabeledEdge& e) {
  const auto it = std::find_if(r.coarse_edges.begin(), r.coarse_edges.end(), [&](const auto& c) { return c.edge == e; });
  REQUIRE(it != r.coarse_edges.end());
  return *it;
}

}  // namespace

TEST_CASE("graph edge counts for both models") {
  const Graph g1 = build_graph(load("model1.ctx"));
  CHECK(g1.nodes.size() == 6);
  CHECK(g1.edges.size() == 8);
  CHECK(g1.nodes[0] == GraphNode{NodeKind::Procedure, "1", "soft_serve"});
  CHECK(g1.nodes[1] == GraphNode{NodeKind::Procedure, "9", "client_app"});
  CHECK(g1.nodes[2] == GraphNode{NodeKind::Context, "a", "user"});
  CHECK(g1.edges[0] == GraphEdge{"1", "9"});

  const Graph g2 = build_graph(load("model2.ctx"));
  CHECK(g2.nodes.size() == 12);
  CHECK(g2.edges.size() == 13);
  CHECK(g2.find("5")->label == "get_location");
  CHECK(g2.find("z") == nullptr);
}

TEST_CASE("isolated nodes are left out unless asked for") {
  const SystemModel m = parse_model("procedures.\n1 : [a]\n2 : [b]\n3 : [idle]\ncontext.\nx : (env)\nconnections.\n[a] -> [b]\n");
  CHECK(build_graph(m).nodes.size() == 2);
  GraphOptions all;
  all.include_isolated = true;
  const Graph g = build_graph(m, all);
  CHECK(g.nodes.size() == 4);
  CHECK(g.edges.size() == 1);
  CHECK(code_of([] { build_graph(load("broken.ctx")); }) == Errc::InvalidModel);
}

TEST_CASE("graph does not depend on statement order") {
  SystemModel m = load("model2.ctx");
  const Graph reference = build_graph(m);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(m.connections.begin(), m.connections.end(), rng);
    std::shuffle(m.procedures.begin(), m.procedures.end(), rng);
    CHECK(build_graph(m) == reference);
    CHECK(to_dot(build_graph(m)) == to_dot(reference));
  }
  SystemModel twice = load("model1.ctx");
  twice.connections.push_back(twice.connections[0]);
  CHECK(build_graph(twice).edges.size() == 8);
}

TEST_CASE("DOT output shape") {
  const std::string dot = to_dot(build_graph(load("model1.ctx")));
  CHECK(dot.starts_with("digraph \"G\" {\n"));
  CHECK(dot.find("  \"1\" [shape=box, label=\"1: soft_serve\"];\n") != std::string::npos);
  CHECK(dot.find("  \"a\" [shape=ellipse, label=\"a: user\"];\n") != std::string::npos);
  CHECK(dot.find("  \"1\" -> \"9\";\n") != std::string::npos);
  CHECK(dot.ends_with("}\n"));
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 6 + 8 + 1);

  RenderConfig named;
  named.graph_name = "model 1";
  CHECK(to_dot(build_graph(load("model1.ctx")), named).starts_with("digraph \"model 1\" {"));
}

TEST_CASE("DOT round-trips through the reader") {
  for (const char* name : {"model1.ctx", "model2.ctx"}) {
    const Graph g = build_graph(load(name));
    const DotGraph d = read_dot(to_dot(g));
    CHECK(d.directed);
    CHECK(d.name == "G");
    CHECK(d.nodes.size() == g.nodes.size());
    CHECK(d.edges.size() == g.edges.size());
    CHECK(graph_from_dot(d) == g);
  }
}

TEST_CASE("DOT reader handles the wider language") {
  const DotGraph d = read_dot(R"(strict digraph "x" {
    // line comment
    # preprocessor line
    rankdir=LR; graph [fontsize=10]
    node [shape=box]
    a -> b -> "c d" [color=red];
    b:port:n -> a /* block */
    e [label="multi" + "part", shape=ellipse]
    -1.5 -> a
  })");
  CHECK(d.strict);
  CHECK(d.graph_attributes.at("rankdir") == "LR");
  CHECK(d.graph_attributes.at("fontsize") == "10");
  CHECK(d.nodes.size() == 5);
  CHECK(d.find("a")->attributes.at("shape") == "box");
  CHECK(d.find("e")->attributes.at("label") == "multipart");
  CHECK(d.find("e")->attributes.at("shape") == "ellipse");
  CHECK(d.find("-1.5") != nullptr);
  REQUIRE(d.edges.size() == 4);
  CHECK(d.edges[1].from == "b");
  CHECK(d.edges[1].to == "c d");
  CHECK(d.edges[1].attributes.at("color") == "red");
  CHECK(d.edges[2].from == "b");

  CHECK_FALSE(read_dot("graph { a -- b }").directed);
  CHECK(code_of([] { read_dot("digraph { subgraph s { a } }"); }) == Errc::FormatError);
  CHECK(code_of([] { read_dot("digraph { a [label=<b>bold</b>] }"); }) == Errc::FormatError);
  CHECK(code_of([] { read_dot("digraph { a -> }"); }) == Errc::FormatError);
  CHECK(code_of([] { graph_from_dot(read_dot("digraph { a -> b }")); }) == Errc::FormatError);
}

TEST_CASE("tree form of a graph") {
  const Graph g = build_graph(load("model2.ctx"));
  const auto j = to_tree(g);
  CHECK(j.at("schema") == "ntm-graph");
  CHECK(j.at("version") == kTreeVersion);
  CHECK(graph_from_tree(j) == g);
  CHECK(render(g, {RenderFormat::Tree, "G"}) == j.dump(2) + "\n");
  CHECK(render_format_from_string("dot") == RenderFormat::Dot);
  CHECK(code_of([] { render_format_from_string("svg"); }) == Errc::InvalidArgument);

  auto wrong = j;
  wrong["schema"] = "ntm-run-result";
  CHECK_THROWS_AS(graph_from_tree(wrong), Error);
  wrong = j;
  wrong["version"] = kTreeVersion + 1;
  CHECK_THROWS_AS(graph_from_tree(wrong), Error);
}

TEST_CASE("tree form of run results and reports") {
  const Network counter = load_network(fixture("feedback_counter.json"));
  const RunResult r = run(counter, ClockConfig::from_network(counter), {}, 20);
  CHECK(run_result_from_tree(to_tree(r), counter) == r);

  const Network pipeline = load_network(fixture("pipeline_speeds.json"));
  const RunResult p = run(pipeline, ClockConfig::from_network(pipeline), {}, 12);
  CHECK(run_result_from_tree(nlohmann::json::parse(to_tree(p).dump()), pipeline) == p);

  const Network m2 = load_network(fixture("model2_net.json"));
  const ContextTrace t = load_trace(fixture("model2_trace_no_location.json"));
  const AwarenessReport a = run_and_check_awareness(m2, t);
  CHECK(awareness_report_from_tree(to_tree(a)) == a);

  const Network red = load_network(fixture("redundancy_net.json"));
  const ContextTrace rt = load_trace(fixture("redundancy_trace.json"));
  const EffectivenessReport e = check_effective(red, rt, std::vector<std::string>{"b"});
  CHECK(effectiveness_report_from_tree(to_tree(e)) == e);

  const RefinementReport ref = refine_check(load("model1.ctx"), load("model2.ctx"), model_map());
  CHECK(refinement_report_from_tree(to_tree(ref)) == ref);
}

TEST_CASE("Model 2 refines Model 1") {
  const RefinementReport r = refine_check(load("model1.ctx"), load("model2.ctx"), model_map());
  CHECK(r.coarse_edges.size() == 8);
  CHECK(r.realized() == 8);
  CHECK(r.extraneous.empty());
  CHECK(r.unmapped_fine.empty());
  CHECK(r.valid());
  const auto& download = coarse(r, edge(proc("soft_serve"), proc("client_app")));
  CHECK(download.witnesses == std::vector<LabeledEdge>{edge(proc("soft_serve"), proc("soft_download"))});
  const auto& screen = coarse(r, edge(ctx("screen"), proc("client_app")));
  CHECK(screen.witnesses == std::vector<LabeledEdge>{edge(ctx("screen"), proc("param_detection"))});
  CHECK(format_report(r).find("8/8 coarse edges realized, 0 extraneous") != std::string::npos);
}

TEST_CASE("dropping a fine edge leaves its coarse edge unrealized") {
  SystemModel fine = load("model2.ctx");
  std::erase_if(fine.connections, [](const ConnectionStmt& s) { return s.left == ctx("location"); });
  const RefinementReport r = refine_check(load("model1.ctx"), fine, model_map());
  CHECK_FALSE(r.valid());
  CHECK(r.realized() == 7);
  CHECK_FALSE(coarse(r, edge(ctx("location"), proc("client_app"))).realized());
  CHECK(format_report(r).find("UNREALIZED") != std::string::npos);
}

TEST_CASE("fine edges without a coarse counterpart are extraneous") {
  SystemModel fine = load("model2.ctx");
  ConnectionStmt extra;
  extra.left = proc("get_map");
  extra.arrow = Arrow::Right;
  extra.right = ctx("user");
  fine.connections.push_back(extra);
  const RefinementReport r = refine_check(load("model1.ctx"), fine, model_map());
  CHECK(r.realized() == 8);
  CHECK(r.extraneous == std::vector<LabeledEdge>{edge(proc("get_map"), ctx("user"))});
  CHECK_FALSE(r.valid());
}

TEST_CASE("identity refinement and mapping errors") {
  const SystemModel m = load("model2.ctx");
  RefinementMap identity;
  for (const auto& p : m.procedures) identity[p.label] = {p.label};
  const RefinementReport self = refine_check(m, m, identity);
  CHECK(self.valid());
  CHECK(self.coarse_edges.size() == 13);

  RefinementMap partial = model_map();
  partial["client_app"].erase("get_map");
  const RefinementReport gap = refine_check(load("model1.ctx"), m, partial);
  CHECK(gap.unmapped_fine == std::vector<std::string>{"get_map"});
  CHECK_FALSE(coarse(gap, edge(ctx("providers"), proc("client_app"))).realized());

  const SystemModel coarse_model = load("model1.ctx");
  RefinementMap missing = model_map();
  missing.erase("soft_serve");
  CHECK(code_of([&] { refine_check(coarse_model, m, missing); }) == Errc::IncompleteMapping);
  RefinementMap unknown = model_map();
  unknown["client_app"].insert("teleport");
  CHECK(code_of([&] { refine_check(coarse_model, m, unknown); }) == Errc::IncompleteMapping);
  RefinementMap stray = model_map();
  stray["nowhere"] = {"get_map"};
  CHECK(code_of([&] { refine_check(coarse_model, m, stray); }) == Errc::IncompleteMapping);
  CHECK(code_of([&] { refine_check(coarse_model, load("broken.ctx"), model_map()); }) == Errc::InvalidModel);
}
