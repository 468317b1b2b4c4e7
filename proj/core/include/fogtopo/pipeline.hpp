#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "fogtopo/caida.hpp"
#include "fogtopo/classification.hpp"
#include "fogtopo/fog_config.hpp"
#include "fogtopo/generator.hpp"
#include "fogtopo/placement.hpp"

namespace fogtopo {

/// Exit codes of the pipeline runner; each failing stage gets its own code.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIngest = 3,
  kExitEnhance = 4,
  kExitPlacement = 5,
  kExitExport = 6,
};

struct GenerateSource {
  GeneratorParams params;
};

struct BriteSource {
  std::filesystem::path path;
};

struct CaidaSource {
  CaidaDatasetPaths paths;
  double default_latency_ms = 1.0;
  double default_bandwidth_mbps = 1000.0;
};

struct OutputSpec {
  enum class Format { kInterchange, kDeployment, kDot };
  Format format = Format::kInterchange;
  std::filesystem::path path;  // "-" writes to stdout
};

OutputSpec::Format parse_output_format(const std::string& name);

/// Keep only the ASs whose size is within tolerance of target_n; the
/// smallest matching AS id is processed.
struct AsFilter {
  std::size_t target_n = 0;
  double tolerance = 0.05;
};

struct PipelineConfig {
  std::variant<GenerateSource, BriteSource, CaidaSource> source;
  std::optional<AsFilter> as_filter;
  FogConfig fog;
  ClassifyOptions classify_options;
  PlacementOptions placement_options;
  std::vector<OutputSpec> outputs;
  std::string provenance;  // derived from the source when empty
};

/// Parses the pipeline configuration document (one `source` of
/// generate/brite/caida, optional `as_filter`, a `fog` config inline or by
/// path, optional `placement` switches, and an `outputs` list).
PipelineConfig parse_pipeline_config(const std::string& text);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct StageTiming {
  std::string stage;
  double elapsed_ms = 0.0;
};

struct PipelineRun {
  Topology topology;
  RouterClassification classification;
  Placement placement;
  std::string provenance;
  std::vector<StageTiming> timings;
};

/// Ingest, classify, and place; no file output. Exceptions carry the Error of
/// the failing stage.
PipelineRun execute_pipeline(const PipelineConfig& config);

/// Renders one output format from a finished run.
std::string render_output(const PipelineRun& run, const PipelineConfig& config,
                          OutputSpec::Format format);

/// Full run: executes the pipeline, writes every requested output, and prints
/// a summary (router counts, split sizes, fog totals, per-stage wall time) to
/// `err`. Returns an ExitStatus; failures are reported on `err` with the
/// failing stage named.
int run_pipeline(const PipelineConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fogtopo
