#pragma once

#include <map>
#include <set>
#include <vector>

#include "fogtopo/error.hpp"
#include "fogtopo/fog_config.hpp"
#include "fogtopo/topology.hpp"

namespace fogtopo {

/// `count` instances of one fog node type.
struct NodeGroup {
  FogNodeType type;
  int count = 0;
  bool operator==(const NodeGroup&) const = default;
};

/// A multiset of fog node instances and its total deployment cost.
struct Configuration {
  std::vector<NodeGroup> nodes;  // sorted by type name
  double cost = 0.0;

  int total_count() const;
  long long total_capacity() const;
  bool operator==(const Configuration&) const = default;
};

/// A possible fog site: the uncovered edge routers it reaches within the
/// latency threshold and the cheapest configuration serving their clients.
struct Candidate {
  RouterId router = 0;
  std::vector<RouterId> range;  // sorted ascending
  Configuration configuration;
  double cost = 0.0;
  int coverage = 0;
};

struct Placement {
  /// Fog node groups per hosting router (groups sorted by type name).
  std::map<RouterId, std::vector<NodeGroup>> assignments;
  /// Edge router -> the fog router that first covered it.
  std::map<RouterId, RouterId> covered_by;
  double total_cost = 0.0;

  std::uint64_t node_instances() const;
  bool operator==(const Placement&) const = default;
};

struct PlacementOptions {
  /// Allow shortest paths to traverse AS boundaries. Off by default: coverage
  /// stays within each AS, mirroring the per-AS backbone construction.
  bool cross_as_paths = false;
  /// Restrict fog sites to edge routers (any router is eligible by default).
  bool restrict_to_edge = false;
};

struct PlacementIteration {
  std::vector<RouterId> uncovered_before;  // sorted ascending
  std::size_t candidate_count = 0;
  RouterId selected = 0;
  int coverage = 0;
  double cost = 0.0;
};
using PlacementTrace = std::vector<PlacementIteration>;

/// Raised when max_total_nodes is exhausted before full coverage.
class PlacementInfeasible : public Error {
 public:
  PlacementInfeasible(std::vector<RouterId> uncovered, Placement partial);
  const std::vector<RouterId>& uncovered() const { return uncovered_; }
  const Placement& partial() const { return partial_; }

 private:
  std::vector<RouterId> uncovered_;
  Placement partial_;
};

/// Shortest-path latency from `source` to every router within `bound_ms`
/// (Dijkstra with early cutoff; the source maps to 0). Paths stay inside the
/// source's AS unless cross_as_paths is set.
std::map<RouterId, double> bounded_latencies(const Topology& topology, RouterId source,
                                             double bound_ms, bool cross_as_paths = false);

/// Cheapest multiset of node types with total capacity >= demand_clients,
/// solved exactly by dynamic programming. Ties prefer fewer instances, then
/// earlier type names.
Configuration optimal_configuration(long long demand_clients,
                                    const std::vector<FogNodeType>& node_types);

/// ceil(coverage * edge_occupancy) with a 1e-9 snap at integer boundaries so
/// binary-float products like 10 * 0.1 do not round up spuriously.
long long client_demand(int coverage, double edge_occupancy);

/// All routers within the latency threshold of at least one uncovered edge
/// router, each with its range and cost-optimal configuration, sorted by
/// router id. host_allowlist, when given, restricts candidate sites.
std::vector<Candidate> determine_candidates(const Topology& topology,
                                            const std::set<RouterId>& uncovered_edges,
                                            const FogConfig& config,
                                            const PlacementOptions& options = {},
                                            const std::set<RouterId>* host_allowlist = nullptr);

/// Greedy latency-bounded placement: repeatedly selects the candidate with
/// the highest coverage/cost ratio (ties: larger coverage, then lower router
/// id) until every edge router is covered. Re-selecting a router merges its
/// configurations. Throws PlacementInfeasible when max_total_nodes would be
/// exceeded. `trace`, when non-null, records every iteration.
Placement place_fog_nodes(const Topology& topology, const RouterClassification& classification,
                          const FogConfig& config, const PlacementOptions& options = {},
                          PlacementTrace* trace = nullptr);

}  // namespace fogtopo
