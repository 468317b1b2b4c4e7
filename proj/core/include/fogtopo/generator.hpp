#pragma once

#include <cstdint>

#include "fogtopo/topology.hpp"

namespace fogtopo {

/// Parameters of the preferential-attachment generator. Growth starts from a
/// clique of attachment_edges + 1 routers; every later router attaches to
/// attachment_edges distinct existing routers picked proportionally to their
/// current degree. Link weights are drawn uniformly from the given ranges.
struct GeneratorParams {
  std::size_t router_count = 0;
  std::size_t attachment_edges = 0;
  std::uint64_t seed = 0;
  double latency_min_ms = 1.0;
  double latency_max_ms = 10.0;
  double bandwidth_min_mbps = 100.0;
  double bandwidth_max_mbps = 1000.0;
  std::int64_t as_id = 0;
};

/// Throws Error naming the violated constraint.
void validate(const GeneratorParams& params);

/// Deterministic: identical params (seed included) produce an identical
/// topology. Routers are numbered 0..router_count-1 in one AS.
Topology generate_barabasi_albert(const GeneratorParams& params);

}  // namespace fogtopo
