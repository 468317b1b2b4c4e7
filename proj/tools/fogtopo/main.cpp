// fogtopo: build, import, and enhance router topologies with fog nodes, then
// export emulator-ready descriptors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fogtopo/bench.hpp"
#include "fogtopo/brite.hpp"
#include "fogtopo/caida.hpp"
#include "fogtopo/classification.hpp"
#include "fogtopo/deployment.hpp"
#include "fogtopo/dot.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/generator.hpp"
#include "fogtopo/interchange.hpp"
#include "fogtopo/pipeline.hpp"
#include "fogtopo/placement.hpp"
#include "fogtopo/version.hpp"

namespace {

using namespace fogtopo;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream text;
    text << std::cin.rdbuf();
    return text.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct WriteFailure : Error {
  using Error::Error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content) || !out.flush()) {
    throw WriteFailure("cannot write output: " + path);
  }
}

void print_warnings(const Topology& topology) {
  for (const std::string& w : topology.warnings()) std::cerr << "warning: " << w << "\n";
}

struct GenerateFlags {
  GeneratorParams params;
  std::vector<double> latency_range{1.0, 10.0};
  std::vector<double> bandwidth_range{100.0, 1000.0};

  GeneratorParams resolve() const {
    GeneratorParams p = params;
    p.latency_min_ms = latency_range.at(0);
    p.latency_max_ms = latency_range.at(1);
    p.bandwidth_min_mbps = bandwidth_range.at(0);
    p.bandwidth_max_mbps = bandwidth_range.at(1);
    return p;
  }
};

void add_generate_flags(CLI::App* cmd, GenerateFlags& flags) {
  cmd->add_option("-n,--nodes", flags.params.router_count, "Number of routers")->required();
  cmd->add_option("-m,--edges-per-node", flags.params.attachment_edges,
                  "Links added per new router")
      ->default_val(2);
  cmd->add_option("-s,--seed", flags.params.seed, "Generator seed")->default_val(1);
  cmd->add_option("--latency-range", flags.latency_range,
                  "Link latency range in ms (min max)")
      ->expected(2);
  cmd->add_option("--bandwidth-range", flags.bandwidth_range,
                  "Link bandwidth range in Mbps (min max)")
      ->expected(2);
  cmd->add_option("--as-id", flags.params.as_id, "AS id of the generated topology")
      ->default_val(0);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const PlacementInfeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "uncovered edge routers:";
    for (RouterId id : e.uncovered()) std::cerr << " " << id;
    std::cerr << "\n";
    return kExitPlacement;
  } catch (const WriteFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExport;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIngest;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIngest;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fog topology preprocessing: generate or import a router graph, classify its "
               "edge, place fog nodes under a latency bound, and export deployment artifacts"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a preferential-attachment topology");
  GenerateFlags gen_flags;
  add_generate_flags(generate, gen_flags);
  std::string gen_output = "-";
  generate->add_option("-o,--output", gen_output, "Interchange output path ('-' for stdout)");
  generate->callback([&]() {
    Topology topology = generate_barabasi_albert(gen_flags.resolve());
    write_output(gen_output, export_interchange(topology));
  });

  // import-brite
  auto* import_brite = app.add_subcommand("import-brite", "Import a BRITE topology export");
  std::string brite_input;
  std::string brite_output = "-";
  import_brite->add_option("-i,--input", brite_input, "BRITE file")->required();
  import_brite->add_option("-o,--output", brite_output, "Interchange output path");
  import_brite->callback([&]() {
    Topology topology = load_brite(brite_input);
    print_warnings(topology);
    write_output(brite_output, export_interchange(topology));
  });

  // import-caida
  auto* import_caida = app.add_subcommand("import-caida", "Import an ITDK-style dataset");
  CaidaDatasetPaths caida_paths;
  std::string caida_nodes, caida_links, caida_as, caida_geo;
  double caida_latency = 1.0, caida_bandwidth = 1000.0;
  std::string caida_output = "-";
  import_caida->add_option("--nodes", caida_nodes, "Nodes file")->required();
  import_caida->add_option("--links", caida_links, "Links file")->required();
  import_caida->add_option("--as", caida_as, "AS assignment file")->required();
  import_caida->add_option("--geo", caida_geo, "Optional geo file (enables distance latency)");
  import_caida->add_option("--default-latency", caida_latency, "Link latency in ms")
      ->default_val(1.0);
  import_caida->add_option("--default-bandwidth", caida_bandwidth, "Link bandwidth in Mbps")
      ->default_val(1000.0);
  import_caida->add_option("-o,--output", caida_output, "Interchange output path");
  import_caida->callback([&]() {
    caida_paths.nodes_file = caida_nodes;
    caida_paths.links_file = caida_links;
    caida_paths.as_file = caida_as;
    if (!caida_geo.empty()) caida_paths.geo_file = caida_geo;
    Topology topology = parse_caida(caida_paths, caida_latency, caida_bandwidth);
    print_warnings(topology);
    write_output(caida_output, export_interchange(topology));
  });

  // enhance
  auto* enhance = app.add_subcommand(
      "enhance", "Classify edge/backbone routers and place fog nodes on an interchange topology");
  std::string enhance_input = "-";
  std::string enhance_fog;
  std::string enhance_output = "-";
  PlacementOptions enhance_options;
  bool enhance_intra_as = false;
  enhance->add_option("-i,--input", enhance_input, "Interchange input path ('-' for stdin)");
  enhance->add_option("-f,--fog-config", enhance_fog, "Fog configuration file")->required();
  enhance->add_flag("--cross-as-paths", enhance_options.cross_as_paths,
                    "Let coverage paths traverse AS boundaries");
  enhance->add_flag("--edge-only", enhance_options.restrict_to_edge,
                    "Restrict fog sites to edge routers");
  enhance->add_flag("--intra-as-degree", enhance_intra_as,
                    "Compare intra-AS instead of total degree against the AS average");
  enhance->add_option("-o,--output", enhance_output, "Enhanced interchange output path");
  enhance->callback([&]() {
    InterchangeDocument doc = import_interchange(read_input(enhance_input));
    FogConfig fog = load_fog_config(enhance_fog);
    ClassifyOptions classify_options;
    if (enhance_intra_as) classify_options.degree_mode = DegreeMode::kIntraAs;
    RouterClassification classification = classify(doc.topology, classify_options);
    Placement placement = place_fog_nodes(doc.topology, classification, fog, enhance_options);
    write_output(enhance_output, export_interchange(doc.topology, &classification, &placement));
  });

  // export
  auto* export_cmd =
      app.add_subcommand("export", "Re-render an interchange document in another format");
  std::string export_input = "-";
  std::string export_format = "dot";
  std::string export_fog;
  std::string export_provenance;
  std::string export_output = "-";
  export_cmd->add_option("-i,--input", export_input, "Interchange input path");
  export_cmd->add_option("--format", export_format, "interchange, deployment, or dot")
      ->required();
  export_cmd->add_option("-f,--fog-config", export_fog,
                         "Fog configuration file (required for deployment)");
  export_cmd->add_option("--provenance", export_provenance,
                         "Provenance string for deployment metadata");
  export_cmd->add_option("-o,--output", export_output, "Output path");
  export_cmd->callback([&]() {
    OutputSpec::Format format = parse_output_format(export_format);
    InterchangeDocument doc = import_interchange(read_input(export_input));
    if (format == OutputSpec::Format::kInterchange) {
      write_output(export_output,
                   export_interchange(doc.topology,
                                      doc.classification ? &*doc.classification : nullptr,
                                      doc.placement ? &*doc.placement : nullptr));
      return;
    }
    if (format == OutputSpec::Format::kDot) {
      write_output(export_output,
                   export_dot(doc.topology, doc.classification ? &*doc.classification : nullptr,
                              doc.placement ? &*doc.placement : nullptr));
      return;
    }
    if (export_fog.empty()) {
      throw CLI::ValidationError("export", "deployment export requires --fog-config");
    }
    if (!doc.classification || !doc.placement) {
      throw Error("deployment export requires an enhanced interchange document "
                  "(run 'enhance' first)");
    }
    FogConfig fog = load_fog_config(export_fog);
    write_output(export_output, export_deployment(doc.topology, *doc.classification,
                                                  *doc.placement, fog, export_provenance));
  });

  // pipeline
  auto* pipeline =
      app.add_subcommand("pipeline", "Run ingest, classification, placement, and export at once");
  std::string pipeline_config_path;
  GenerateFlags pipe_gen;
  bool pipe_has_generate = false;
  std::string pipe_brite;
  std::string pipe_caida_nodes, pipe_caida_links, pipe_caida_as, pipe_caida_geo;
  double pipe_caida_latency = 1.0, pipe_caida_bandwidth = 1000.0;
  std::string pipe_fog;
  std::vector<std::string> pipe_outputs;
  std::size_t pipe_filter_n = 0;
  double pipe_filter_tolerance = 0.05;
  PlacementOptions pipe_options;
  bool pipe_intra_as = false;
  pipeline->add_option("-c,--config", pipeline_config_path,
                       "Pipeline configuration document (overrides inline flags)");
  pipeline->add_option("--generate-nodes", pipe_gen.params.router_count,
                       "Generate a topology with this many routers");
  pipeline->add_option("--generate-edges-per-node", pipe_gen.params.attachment_edges,
                       "Links per new router")
      ->default_val(2);
  pipeline->add_option("--seed", pipe_gen.params.seed, "Generator seed")->default_val(1);
  pipeline->add_option("--latency-range", pipe_gen.latency_range, "Latency range (min max)")
      ->expected(2);
  pipeline->add_option("--bandwidth-range", pipe_gen.bandwidth_range,
                       "Bandwidth range (min max)")
      ->expected(2);
  pipeline->add_option("--brite", pipe_brite, "Import a BRITE file");
  pipeline->add_option("--caida-nodes", pipe_caida_nodes, "CAIDA nodes file");
  pipeline->add_option("--caida-links", pipe_caida_links, "CAIDA links file");
  pipeline->add_option("--caida-as", pipe_caida_as, "CAIDA AS file");
  pipeline->add_option("--caida-geo", pipe_caida_geo, "CAIDA geo file");
  pipeline->add_option("--default-latency", pipe_caida_latency, "CAIDA link latency (ms)");
  pipeline->add_option("--default-bandwidth", pipe_caida_bandwidth,
                       "CAIDA link bandwidth (Mbps)");
  pipeline->add_option("-f,--fog-config", pipe_fog, "Fog configuration file");
  pipeline->add_option("--as-filter-n", pipe_filter_n, "Keep an AS of about this many routers");
  pipeline->add_option("--as-filter-tolerance", pipe_filter_tolerance,
                       "Relative AS size tolerance")
      ->default_val(0.05);
  pipeline->add_flag("--cross-as-paths", pipe_options.cross_as_paths,
                     "Let coverage paths traverse AS boundaries");
  pipeline->add_flag("--edge-only", pipe_options.restrict_to_edge,
                     "Restrict fog sites to edge routers");
  pipeline->add_flag("--intra-as-degree", pipe_intra_as,
                     "Compare intra-AS instead of total degree against the AS average");
  pipeline->add_option("-o,--output", pipe_outputs,
                       "Output as format=path (interchange, deployment, dot); repeatable");
  auto* gen_nodes_opt = pipeline->get_option("--generate-nodes");
  pipeline->callback([&]() {
    pipe_has_generate = gen_nodes_opt->count() > 0;
    PipelineConfig config;
    if (!pipeline_config_path.empty()) {
      config = load_pipeline_config(pipeline_config_path);
    } else {
      int sources = static_cast<int>(pipe_has_generate) +
                    static_cast<int>(!pipe_brite.empty()) +
                    static_cast<int>(!pipe_caida_nodes.empty());
      if (sources != 1) {
        throw CLI::ValidationError(
            "pipeline", "exactly one source is required (--generate-nodes, --brite, or --caida-*)");
      }
      if (pipe_has_generate) {
        config.source = GenerateSource{pipe_gen.resolve()};
      } else if (!pipe_brite.empty()) {
        config.source = BriteSource{pipe_brite};
      } else {
        CaidaSource caida;
        caida.paths.nodes_file = pipe_caida_nodes;
        caida.paths.links_file = pipe_caida_links;
        caida.paths.as_file = pipe_caida_as;
        if (!pipe_caida_geo.empty()) caida.paths.geo_file = pipe_caida_geo;
        caida.default_latency_ms = pipe_caida_latency;
        caida.default_bandwidth_mbps = pipe_caida_bandwidth;
        config.source = std::move(caida);
      }
      if (pipe_fog.empty()) {
        throw CLI::ValidationError("pipeline", "--fog-config is required");
      }
      config.fog = load_fog_config(pipe_fog);
      if (pipe_filter_n > 0) {
        config.as_filter = AsFilter{pipe_filter_n, pipe_filter_tolerance};
      }
      if (pipe_intra_as) config.classify_options.degree_mode = DegreeMode::kIntraAs;
      config.placement_options = pipe_options;
      if (pipe_outputs.empty()) {
        throw CLI::ValidationError("pipeline", "at least one --output format=path is required");
      }
      for (const std::string& o : pipe_outputs) {
        std::size_t eq = o.find('=');
        if (eq == std::string::npos) {
          throw CLI::ValidationError("pipeline", "--output expects format=path, got '" + o + "'");
        }
        config.outputs.push_back({parse_output_format(o.substr(0, eq)), o.substr(eq + 1)});
      }
    }
    int status = run_pipeline(config, std::cout, std::cerr);
    if (status != kExitOk) throw CLI::RuntimeError(status);
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Time classification and placement on generated ASs");
  BenchParams bench_params;
  std::string bench_fog;
  std::string bench_output = "-";
  bench->add_option("--sizes", bench_params.sizes, "AS sizes to generate")
      ->default_val(std::vector<std::size_t>{10, 100, 1000, 10000});
  bench->add_option("--samples", bench_params.samples, "Topologies per size")->default_val(5);
  bench->add_option("--runs", bench_params.runs, "Timed repetitions per topology")
      ->default_val(5);
  bench->add_option("--thresholds", bench_params.thresholds_ms,
                    "Latency thresholds (ms) for placement")
      ->default_val(std::vector<double>{2.0, 4.0, 8.0, 200.0});
  bench->add_option("--seed", bench_params.seed, "Base seed")->default_val(1);
  bench->add_option("-m,--edges-per-node", bench_params.attachment_edges,
                    "Links per new router")
      ->default_val(2);
  bench->add_option("-f,--fog-config", bench_fog,
                    "Fog configuration file (built-in single type when omitted)");
  bench->add_option("-o,--output", bench_output, "CSV output path");
  bench->callback([&]() {
    if (!bench_fog.empty()) bench_params.fog = load_fog_config(bench_fog);
    std::ostringstream csv;
    run_bench(bench_params, csv);
    write_output(bench_output, csv.str());
  });

  return guarded([&]() {
    try {
      app.parse(argc, argv);
      return static_cast<int>(kExitOk);
    } catch (const CLI::RuntimeError& e) {
      return e.get_exit_code();
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return static_cast<int>(kExitUsage);
    }
  });
}
