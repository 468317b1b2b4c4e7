#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "fogtopo/fog_config.hpp"

namespace fogtopo {

/// Timing harness over generated ASs: per size, `samples` seeded topologies,
/// each classified and fog-placed (per threshold) `runs` times.
struct BenchParams {
  std::vector<std::size_t> sizes{10, 100, 1000, 10000};
  int samples = 5;
  int runs = 5;
  std::vector<double> thresholds_ms{2.0, 4.0, 8.0, 200.0};
  std::uint64_t seed = 1;
  std::size_t attachment_edges = 2;
  std::optional<FogConfig> fog;  // built-in single-type config when absent
};

/// Emits CSV timing rows (stage,size,sample,run,threshold_ms,elapsed_ms),
/// one classify row plus one place row per threshold for every
/// size x sample x run, followed by a blank line and a percentile summary
/// (stage,size,threshold_ms,percentile,elapsed_ms; percentiles 10/25/50/75/90
/// per stage/size/threshold group). Timings cover the algorithms only; the
/// topology is built outside the clock.
void run_bench(const BenchParams& params, std::ostream& out);

}  // namespace fogtopo
