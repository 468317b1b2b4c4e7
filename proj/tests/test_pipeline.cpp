#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fogtopo/bench.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/pipeline.hpp"

using namespace fogtopo;
namespace fs = std::filesystem;

namespace {

std::string fog_json() {
  return R"({
    "latency_threshold_ms": 4,
    "edge_occupancy": 1,
    "node_types": [
      {"name": "small", "max_clients": 10, "cost": 3, "image": "fog/small:latest"}
    ]
  })";
}

PipelineConfig generated_config() {
  PipelineConfig config;
  GeneratorParams params;
  params.router_count = 60;
  params.attachment_edges = 2;
  params.seed = 11;
  config.source = GenerateSource{params};
  config.fog = parse_fog_config(fog_json());
  config.outputs.push_back({OutputSpec::Format::kInterchange, "-"});
  return config;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fogtopo_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("pipeline config documents parse all three sources") {
  PipelineConfig gen = parse_pipeline_config(R"({
    "source": {"generate": {"router_count": 50, "attachment_edges": 2, "seed": 3,
                            "latency_range": [1, 5], "bandwidth_range": [10, 100], "as_id": 4}},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "dot", "path": "-"}]
  })");
  const auto& params = std::get<GenerateSource>(gen.source).params;
  CHECK(params.router_count == 50);
  CHECK(params.latency_max_ms == 5.0);
  CHECK(params.as_id == 4);
  CHECK(gen.outputs[0].format == OutputSpec::Format::kDot);

  PipelineConfig brite = parse_pipeline_config(R"({
    "source": {"brite": "topo.brite"},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "interchange", "path": "out.json"}]
  })");
  CHECK(std::get<BriteSource>(brite.source).path == "topo.brite");

  PipelineConfig caida = parse_pipeline_config(R"({
    "source": {"caida": {"nodes_file": "a.nodes", "links_file": "a.links", "as_file": "a.as",
                         "default_latency_ms": 2.5}},
    "as_filter": {"target_n": 100, "tolerance": 0.05},
    "placement": {"cross_as_paths": true},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "deployment", "path": "d.json"}]
  })");
  CHECK(std::get<CaidaSource>(caida.source).default_latency_ms == 2.5);
  REQUIRE(caida.as_filter);
  CHECK(caida.as_filter->target_n == 100);
  CHECK(caida.placement_options.cross_as_paths);
}

TEST_CASE("pipeline config rejects missing or ambiguous sources and empty outputs") {
  CHECK_THROWS_AS(parse_pipeline_config(R"({"fog": {}, "outputs": []})"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config(R"({
    "source": {"brite": "a", "caida": {"nodes_file": "n", "links_file": "l", "as_file": "s"}},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "dot", "path": "-"}]
  })"),
                       doctest::Contains("exactly one source"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config(R"({
    "source": {"brite": "a"},
    "fog": )" + fog_json() + R"(,
    "outputs": []
  })"),
                       doctest::Contains("output"), Error);
}

TEST_CASE("execute_pipeline runs ingest, classification, and placement") {
  PipelineRun run = execute_pipeline(generated_config());
  CHECK(run.topology.router_count() == 60);
  CHECK(run.classification.backbone.size() + run.classification.edge.size() == 60);
  for (RouterId edge : run.classification.edge) {
    CHECK(run.placement.covered_by.count(edge));
  }
  CHECK(run.timings.size() == 3);
  CHECK(run.provenance.find("seed=11") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  PipelineConfig config = generated_config();
  PipelineRun a = execute_pipeline(config);
  PipelineRun b = execute_pipeline(config);
  for (OutputSpec::Format format :
       {OutputSpec::Format::kInterchange, OutputSpec::Format::kDeployment,
        OutputSpec::Format::kDot}) {
    CHECK(render_output(a, config, format) == render_output(b, config, format));
  }
}

TEST_CASE("the as_filter keeps a matching AS or fails") {
  PipelineConfig config = generated_config();
  config.as_filter = AsFilter{60, 0.0};
  PipelineRun run = execute_pipeline(config);
  CHECK(run.topology.router_count() == 60);

  config.as_filter = AsFilter{10, 0.0};
  CHECK_THROWS_WITH_AS(execute_pipeline(config), doctest::Contains("no AS"), Error);
}

TEST_CASE("run_pipeline writes outputs and reports a summary") {
  TempDir dir;
  PipelineConfig config = generated_config();
  config.outputs = {{OutputSpec::Format::kInterchange, dir.path / "out.json"},
                    {OutputSpec::Format::kDeployment, dir.path / "deploy.json"},
                    {OutputSpec::Format::kDot, dir.path / "graph.dot"}};
  std::ostringstream out, err;
  CHECK(run_pipeline(config, out, err) == kExitOk);
  CHECK(fs::exists(dir.path / "out.json"));
  CHECK(fs::exists(dir.path / "deploy.json"));
  CHECK(fs::exists(dir.path / "graph.dot"));
  CHECK(err.str().find("routers: 60") != std::string::npos);
  CHECK(err.str().find("timings:") != std::string::npos);
}

TEST_CASE("run_pipeline maps failures to stage exit codes") {
  TempDir dir;

  // Ingest failure: BRITE file with a dangling edge endpoint.
  std::ofstream bad(dir.path / "bad.brite");
  bad << "Nodes: ( 1 )\n0 0 0 1 1 7 RT_NODE\n\nEdges: ( 1 )\n0 0 9 1.0 1.0 10.0 7 7 E_RT\n";
  bad.close();
  PipelineConfig config = generated_config();
  config.source = BriteSource{dir.path / "bad.brite"};
  std::ostringstream out, err;
  CHECK(run_pipeline(config, out, err) == kExitIngest);
  CHECK(err.str().find("ingest") != std::string::npos);

  // Placement failure: a zero node budget.
  PipelineConfig zero = generated_config();
  zero.fog.max_total_nodes = 0;
  std::ostringstream out2, err2;
  CHECK(run_pipeline(zero, out2, err2) == kExitPlacement);
  CHECK(err2.str().find("uncovered") != std::string::npos);

  // Export failure: unwritable output path.
  PipelineConfig bad_out = generated_config();
  bad_out.outputs = {{OutputSpec::Format::kInterchange, dir.path / "missing" / "out.json"}};
  std::ostringstream out3, err3;
  CHECK(run_pipeline(bad_out, out3, err3) == kExitExport);
}

namespace {

// Splits CSV text into (timing rows, summary rows), skipping headers/comments.
std::pair<std::vector<std::string>, std::vector<std::string>> split_bench_csv(
    const std::string& text) {
  std::vector<std::string> timing, summary;
  std::istringstream in(text);
  std::string line;
  bool in_summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      in_summary = true;
      continue;
    }
    if (line[0] == '#' || line.rfind("stage,", 0) == 0) continue;
    (in_summary ? summary : timing).push_back(line);
  }
  return {timing, summary};
}

}  // namespace

TEST_CASE("bench emits one classify row plus one place row per threshold") {
  BenchParams params;
  params.sizes = {10};
  params.samples = 1;
  params.runs = 1;
  params.thresholds_ms = {2.0};
  std::ostringstream csv;
  run_bench(params, csv);
  auto [timing, summary] = split_bench_csv(csv.str());
  CHECK(timing.size() == 2);
  CHECK(timing[0].rfind("classify,10,0,0,,", 0) == 0);
  CHECK(timing[1].rfind("place,10,0,0,2,", 0) == 0);
  // Two groups (classify, place@2) x five percentiles.
  CHECK(summary.size() == 10);
}

TEST_CASE("bench row count is sizes x samples x runs x (1 + thresholds)") {
  BenchParams params;
  params.sizes = {10, 20};
  params.samples = 2;
  params.runs = 3;
  params.thresholds_ms = {2.0, 4.0};
  std::ostringstream csv;
  run_bench(params, csv);
  auto [timing, summary] = split_bench_csv(csv.str());
  CHECK(timing.size() == 2 * 2 * 3 * (1 + 2));
}

TEST_CASE("a 25-value bench column summarizes to five percentile rows per group") {
  BenchParams params;
  params.sizes = {10};
  params.samples = 5;
  params.runs = 5;
  params.thresholds_ms = {2.0};
  std::ostringstream csv;
  run_bench(params, csv);
  auto [timing, summary] = split_bench_csv(csv.str());
  CHECK(timing.size() == 50);
  // classify group and place@2 group, five rows each.
  int classify_rows = 0, place_rows = 0;
  for (const std::string& row : summary) {
    if (row.rfind("classify,", 0) == 0) ++classify_rows;
    if (row.rfind("place,", 0) == 0) ++place_rows;
  }
  CHECK(classify_rows == 5);
  CHECK(place_rows == 5);
}

TEST_CASE("bench validates its parameters") {
  BenchParams params;
  params.samples = 0;
  std::ostringstream csv;
  CHECK_THROWS_AS(run_bench(params, csv), Error);
}

TEST_CASE("bench defaults cover the standard evaluation grid") {
  BenchParams params;
  CHECK(params.sizes == std::vector<std::size_t>{10, 100, 1000, 10000});
  CHECK(params.samples == 5);
  CHECK(params.runs == 5);
  CHECK(params.thresholds_ms == std::vector<double>{2.0, 4.0, 8.0, 200.0});
}

TEST_CASE("pipeline config accepts the degree-mode switch") {
  PipelineConfig config = parse_pipeline_config(R"({
    "source": {"generate": {"router_count": 20}},
    "classification": {"degree_mode": "intra_as"},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "dot", "path": "-"}]
  })");
  CHECK(config.classify_options.degree_mode == DegreeMode::kIntraAs);
  CHECK_THROWS_AS(parse_pipeline_config(R"({
    "source": {"generate": {"router_count": 20}},
    "classification": {"degree_mode": "sideways"},
    "fog": )" + fog_json() + R"(,
    "outputs": [{"format": "dot", "path": "-"}]
  })"),
                  Error);
}
