#include "fogtopo/generator.hpp"

#include <algorithm>
#include <string>

#include "fogtopo/error.hpp"
#include "rng.hpp"

namespace fogtopo {

void validate(const GeneratorParams& p) {
  if (p.router_count == 0) throw Error("generator: router_count must be positive");
  if (p.attachment_edges == 0) throw Error("generator: attachment_edges must be positive");
  if (p.attachment_edges >= p.router_count) {
    throw Error("generator: attachment_edges (" + std::to_string(p.attachment_edges) +
                ") must be smaller than router_count (" + std::to_string(p.router_count) + ")");
  }
  if (p.latency_min_ms <= 0.0) throw Error("generator: latency range minimum must be positive");
  if (p.latency_min_ms > p.latency_max_ms) {
    throw Error("generator: latency range minimum must not exceed maximum");
  }
  if (p.bandwidth_min_mbps <= 0.0) {
    throw Error("generator: bandwidth range minimum must be positive");
  }
  if (p.bandwidth_min_mbps > p.bandwidth_max_mbps) {
    throw Error("generator: bandwidth range minimum must not exceed maximum");
  }
}

Topology generate_barabasi_albert(const GeneratorParams& params) {
  validate(params);

  Topology topo;
  for (RouterId id = 0; id < params.router_count; ++id) {
    topo.add_router(id, params.as_id);
  }

  detail::Rng rng(params.seed);
  auto connect = [&](RouterId a, RouterId b) {
    double latency = rng.uniform_real(params.latency_min_ms, params.latency_max_ms);
    double bandwidth = rng.uniform_real(params.bandwidth_min_mbps, params.bandwidth_max_mbps);
    topo.add_link({a, b, latency, bandwidth});
  };

  // stubs holds one entry per link endpoint, so drawing an index uniformly
  // picks a router proportionally to its degree.
  std::vector<RouterId> stubs;
  stubs.reserve(2 * (params.attachment_edges * params.router_count));

  const std::size_t m = params.attachment_edges;
  for (RouterId i = 0; i <= m; ++i) {
    for (RouterId j = i + 1; j <= m; ++j) {
      connect(i, j);
      stubs.push_back(i);
      stubs.push_back(j);
    }
  }

  std::vector<RouterId> targets;
  for (RouterId v = m + 1; v < params.router_count; ++v) {
    targets.clear();
    // Sample m distinct targets from the pre-step degree distribution.
    std::size_t pool = stubs.size();
    while (targets.size() < m) {
      RouterId pick = stubs[rng.uniform_index(pool)];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) {
        targets.push_back(pick);
      }
    }
    for (RouterId t : targets) {
      connect(v, t);
      stubs.push_back(t);
      stubs.push_back(v);
    }
  }

  return topo;
}

}  // namespace fogtopo
