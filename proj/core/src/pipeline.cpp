#include "fogtopo/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "canonical.hpp"
#include "fogtopo/brite.hpp"
#include "fogtopo/classification.hpp"
#include "fogtopo/deployment.hpp"
#include "fogtopo/dot.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/interchange.hpp"

namespace fogtopo {

using nlohmann::json;

OutputSpec::Format parse_output_format(const std::string& name) {
  if (name == "interchange") return OutputSpec::Format::kInterchange;
  if (name == "deployment") return OutputSpec::Format::kDeployment;
  if (name == "dot") return OutputSpec::Format::kDot;
  throw Error("unknown output format '" + name + "' (expected interchange, deployment, or dot)");
}

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

GeneratorParams parse_generator_params(const json& g) {
  GeneratorParams params;
  params.router_count = g.at("router_count").get<std::size_t>();
  params.attachment_edges = g.value("attachment_edges", std::size_t{2});
  params.seed = g.value("seed", std::uint64_t{1});
  if (g.contains("latency_range")) {
    params.latency_min_ms = g["latency_range"].at(0).get<double>();
    params.latency_max_ms = g["latency_range"].at(1).get<double>();
  }
  if (g.contains("bandwidth_range")) {
    params.bandwidth_min_mbps = g["bandwidth_range"].at(0).get<double>();
    params.bandwidth_max_mbps = g["bandwidth_range"].at(1).get<double>();
  }
  params.as_id = g.value("as_id", std::int64_t{0});
  return params;
}

std::string default_provenance(const PipelineConfig& config) {
  if (const auto* gen = std::get_if<GenerateSource>(&config.source)) {
    const GeneratorParams& p = gen->params;
    return "generate(router_count=" + std::to_string(p.router_count) +
           ",attachment_edges=" + std::to_string(p.attachment_edges) +
           ",seed=" + std::to_string(p.seed) + ")";
  }
  if (const auto* brite = std::get_if<BriteSource>(&config.source)) {
    return "brite:" + brite->path.string();
  }
  const auto& caida = std::get<CaidaSource>(config.source);
  return "caida:" + caida.paths.nodes_file.string();
}

}  // namespace

PipelineConfig parse_pipeline_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("pipeline config is not valid JSON: ") + e.what());
  }

  PipelineConfig config;
  try {
    const json& source = doc.at("source");
    int sources = static_cast<int>(source.contains("generate")) +
                  static_cast<int>(source.contains("brite")) +
                  static_cast<int>(source.contains("caida"));
    if (sources != 1) {
      throw Error("pipeline config: exactly one source (generate, brite, or caida) is required");
    }
    if (source.contains("generate")) {
      config.source = GenerateSource{parse_generator_params(source["generate"])};
    } else if (source.contains("brite")) {
      config.source = BriteSource{source["brite"].get<std::string>()};
    } else {
      const json& c = source["caida"];
      CaidaSource caida;
      caida.paths.nodes_file = c.at("nodes_file").get<std::string>();
      caida.paths.links_file = c.at("links_file").get<std::string>();
      caida.paths.as_file = c.at("as_file").get<std::string>();
      if (c.contains("geo_file") && !c["geo_file"].is_null()) {
        caida.paths.geo_file = c["geo_file"].get<std::string>();
      }
      caida.default_latency_ms = c.value("default_latency_ms", 1.0);
      caida.default_bandwidth_mbps = c.value("default_bandwidth_mbps", 1000.0);
      config.source = std::move(caida);
    }

    if (doc.contains("as_filter") && !doc["as_filter"].is_null()) {
      AsFilter filter;
      filter.target_n = doc["as_filter"].at("target_n").get<std::size_t>();
      filter.tolerance = doc["as_filter"].value("tolerance", 0.05);
      config.as_filter = filter;
    }

    const json& fog = doc.at("fog");
    if (fog.is_string()) {
      config.fog = load_fog_config(fog.get<std::string>());
    } else {
      config.fog = parse_fog_config(fog.dump());
    }

    if (doc.contains("classification") && !doc["classification"].is_null()) {
      std::string mode = doc["classification"].value("degree_mode", "total");
      if (mode == "total") {
        config.classify_options.degree_mode = DegreeMode::kTotal;
      } else if (mode == "intra_as") {
        config.classify_options.degree_mode = DegreeMode::kIntraAs;
      } else {
        throw Error("pipeline config: unknown degree_mode '" + mode +
                    "' (expected total or intra_as)");
      }
    }

    if (doc.contains("placement") && !doc["placement"].is_null()) {
      config.placement_options.cross_as_paths = doc["placement"].value("cross_as_paths", false);
      config.placement_options.restrict_to_edge =
          doc["placement"].value("restrict_to_edge", false);
    }

    for (const json& o : doc.at("outputs")) {
      OutputSpec spec;
      spec.format = parse_output_format(o.at("format").get<std::string>());
      spec.path = o.at("path").get<std::string>();
      config.outputs.push_back(std::move(spec));
    }
    if (config.outputs.empty()) {
      throw Error("pipeline config: at least one output is required");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("pipeline config: ") + e.what());
  }
  return config;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pipeline config: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_pipeline_config(text.str());
}

PipelineRun execute_pipeline(const PipelineConfig& config) {
  PipelineRun run;
  run.provenance = config.provenance.empty() ? default_provenance(config) : config.provenance;

  auto start = std::chrono::steady_clock::now();
  if (const auto* gen = std::get_if<GenerateSource>(&config.source)) {
    run.topology = generate_barabasi_albert(gen->params);
  } else if (const auto* brite = std::get_if<BriteSource>(&config.source)) {
    run.topology = load_brite(brite->path);
  } else {
    const auto& caida = std::get<CaidaSource>(config.source);
    run.topology = parse_caida(caida.paths, caida.default_latency_ms,
                               caida.default_bandwidth_mbps);
  }
  if (config.as_filter) {
    std::vector<std::int64_t> matching =
        select_as_by_size(run.topology, config.as_filter->target_n, config.as_filter->tolerance);
    if (matching.empty()) {
      throw Error("as_filter: no AS within " + std::to_string(config.as_filter->tolerance * 100) +
                  "% of " + std::to_string(config.as_filter->target_n) + " routers");
    }
    run.topology = extract_as(run.topology, matching.front());
    run.provenance += " as=" + std::to_string(matching.front());
  }
  run.timings.push_back({"ingest", ms_since(start)});

  start = std::chrono::steady_clock::now();
  run.classification = classify(run.topology, config.classify_options);
  run.timings.push_back({"classify", ms_since(start)});

  start = std::chrono::steady_clock::now();
  run.placement =
      place_fog_nodes(run.topology, run.classification, config.fog, config.placement_options);
  run.timings.push_back({"place", ms_since(start)});

  return run;
}

std::string render_output(const PipelineRun& run, const PipelineConfig& config,
                          OutputSpec::Format format) {
  switch (format) {
    case OutputSpec::Format::kInterchange:
      return export_interchange(run.topology, &run.classification, &run.placement);
    case OutputSpec::Format::kDeployment:
      return export_deployment(run.topology, run.classification, run.placement, config.fog,
                               run.provenance);
    case OutputSpec::Format::kDot:
      return export_dot(run.topology, &run.classification, &run.placement);
  }
  throw Error("unhandled output format");
}

int run_pipeline(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  PipelineRun run;
  try {
    run = execute_pipeline(config);
  } catch (const PlacementInfeasible& e) {
    err << "stage 'place' failed: " << e.what() << "\n";
    err << "uncovered edge routers:";
    for (RouterId id : e.uncovered()) err << " " << id;
    err << "\n";
    return kExitPlacement;
  } catch (const ParseError& e) {
    err << "stage 'ingest' failed: " << e.what() << "\n";
    return kExitIngest;
  } catch (const Error& e) {
    err << "stage 'ingest' failed: " << e.what() << "\n";
    return kExitIngest;
  }

  for (const std::string& warning : run.topology.warnings()) {
    err << "warning: " << warning << "\n";
  }

  auto start = std::chrono::steady_clock::now();
  for (const OutputSpec& spec : config.outputs) {
    std::string rendered;
    try {
      rendered = render_output(run, config, spec.format);
    } catch (const Error& e) {
      err << "stage 'export' failed: " << e.what() << "\n";
      return kExitExport;
    }
    if (spec.path == "-") {
      out << rendered;
    } else {
      std::ofstream file(spec.path, std::ios::binary);
      if (!file || !(file << rendered) || !file.flush()) {
        err << "stage 'export' failed: cannot write " << spec.path.string() << "\n";
        return kExitExport;
      }
    }
  }
  run.timings.push_back({"export", ms_since(start)});

  err << "routers: " << run.topology.router_count() << "  links: " << run.topology.link_count()
      << "  ASs: " << run.topology.as_count() << "\n";
  err << "backbone: " << run.classification.backbone.size()
      << "  edge: " << run.classification.edge.size() << "\n";
  err << "fog: " << run.placement.node_instances() << " node(s) at "
      << run.placement.assignments.size()
      << " router(s)  total cost: " << detail::format_number(run.placement.total_cost) << "\n";
  err << "timings:";
  for (const StageTiming& t : run.timings) {
    err << " " << t.stage << " " << detail::format_number(t.elapsed_ms) << " ms";
  }
  err << "\n";
  return kExitOk;
}

}  // namespace fogtopo
