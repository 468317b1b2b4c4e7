#include "fogtopo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <tuple>

#include "canonical.hpp"
#include "fogtopo/classification.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/generator.hpp"
#include "fogtopo/placement.hpp"

namespace fogtopo {

namespace {

constexpr int kPercentiles[] = {10, 25, 50, 75, 90};

FogConfig default_bench_fog() {
  FogConfig config;
  config.node_types.push_back({"standard", 100, 1.0, "fog/standard:latest", {}, {}});
  config.edge_occupancy = 10.0;
  config.latency_threshold_ms = 1.0;  // overridden per run
  return config;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Percentile with linear interpolation between closest ranks.
double percentile(std::vector<double> values, int p) {
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values.front();
  double rank = static_cast<double>(p) / 100.0 * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  double frac = rank - static_cast<double>(lo);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::uint64_t sample_seed(std::uint64_t base, std::size_t size_index, int sample) {
  std::uint64_t x = base ^ (static_cast<std::uint64_t>(size_index) * 0x9e3779b97f4a7c15ULL) ^
                    (static_cast<std::uint64_t>(sample) * 0xbf58476d1ce4e5b9ULL);
  x ^= x >> 31;
  return x;
}

}  // namespace

void run_bench(const BenchParams& params, std::ostream& out) {
  if (params.sizes.empty()) throw Error("bench: at least one size is required");
  if (params.samples < 1) throw Error("bench: samples must be at least 1");
  if (params.runs < 1) throw Error("bench: runs must be at least 1");
  for (double t : params.thresholds_ms) {
    if (t <= 0.0) throw Error("bench: thresholds must be positive");
  }

  FogConfig fog = params.fog ? *params.fog : default_bench_fog();

  out << "# fogtopo bench seed=" << params.seed
      << " attachment_edges=" << params.attachment_edges << "\n";
  out << "stage,size,sample,run,threshold_ms,elapsed_ms\n";

  // (stage, size, threshold or -1) -> timings
  std::map<std::tuple<std::string, std::size_t, double>, std::vector<double>> groups;

  for (std::size_t size_index = 0; size_index < params.sizes.size(); ++size_index) {
    std::size_t size = params.sizes[size_index];
    for (int sample = 0; sample < params.samples; ++sample) {
      GeneratorParams gen;
      gen.router_count = size;
      gen.attachment_edges = params.attachment_edges;
      gen.seed = sample_seed(params.seed, size_index, sample);
      Topology topology = generate_barabasi_albert(gen);

      for (int run = 0; run < params.runs; ++run) {
        auto start = std::chrono::steady_clock::now();
        RouterClassification classification = classify(topology);
        double classify_ms = ms_since(start);
        out << "classify," << size << "," << sample << "," << run << ",,"
            << detail::format_number(classify_ms) << "\n";
        groups[{"classify", size, -1.0}].push_back(classify_ms);

        for (double threshold : params.thresholds_ms) {
          fog.latency_threshold_ms = threshold;
          start = std::chrono::steady_clock::now();
          Placement placement = place_fog_nodes(topology, classification, fog);
          double place_ms = ms_since(start);
          out << "place," << size << "," << sample << "," << run << ","
              << detail::format_number(threshold) << "," << detail::format_number(place_ms)
              << "\n";
          groups[{"place", size, threshold}].push_back(place_ms);
        }
      }
    }
  }

  out << "\nstage,size,threshold_ms,percentile,elapsed_ms\n";
  for (const auto& [key, values] : groups) {
    const auto& [stage, size, threshold] = key;
    for (int p : kPercentiles) {
      out << stage << "," << size << ",";
      if (threshold >= 0.0) out << detail::format_number(threshold);
      out << "," << p << "," << detail::format_number(percentile(values, p)) << "\n";
    }
  }
}

}  // namespace fogtopo
