#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace fogtopo {

using RouterId = std::uint64_t;

/// AS bucket for routers whose source dataset carries no AS record.
inline constexpr std::int64_t kOrphanAs = -1;

/// Floors applied to non-positive link weights at ingest.
inline constexpr double kLatencyFloorMs = 0.001;
inline constexpr double kBandwidthFloorMbps = 0.1;

struct Link {
  RouterId a = 0;
  RouterId b = 0;
  double latency_ms = 0.0;
  double bandwidth_mbps = 0.0;
};

/// Undirected router graph partitioned into autonomous systems.
///
/// The graph is built once by an ingest stage and read-only afterwards; every
/// downstream stage takes a const reference. Parallel links are merged on
/// insertion, keeping the minimum latency and the maximum bandwidth of the
/// pair. Non-positive weights are clamped to the configured floors and each
/// clamp is recorded in warnings().
class Topology {
 public:
  struct Neighbor {
    std::uint32_t router;  // index into router storage
    std::uint32_t link;    // index into links()
  };

  void add_router(RouterId id, std::int64_t as_id);
  void add_link(Link link);

  bool has_router(RouterId id) const { return index_.find(id) != index_.end(); }
  std::size_t router_count() const { return ids_.size(); }
  std::size_t link_count() const { return links_.size(); }

  /// Dense index of a router, stable for the lifetime of the topology.
  std::size_t index_of(RouterId id) const;
  RouterId id_at(std::size_t index) const { return ids_[index]; }
  std::int64_t as_at(std::size_t index) const { return as_[index]; }
  std::int64_t as_of(RouterId id) const { return as_[index_of(id)]; }

  std::size_t degree(RouterId id) const { return adjacency_[index_of(id)].size(); }
  std::size_t degree_at(std::size_t index) const { return adjacency_[index].size(); }
  /// Number of incident links whose peer belongs to the same AS.
  std::size_t intra_as_degree(RouterId id) const;

  /// Router ids in insertion order.
  const std::vector<RouterId>& router_ids() const { return ids_; }
  std::vector<RouterId> sorted_router_ids() const;

  const std::vector<Link>& links() const { return links_; }
  const std::vector<Neighbor>& neighbors_at(std::size_t index) const { return adjacency_[index]; }
  const Link* find_link(RouterId a, RouterId b) const;

  /// AS ids present, ascending.
  std::vector<std::int64_t> as_ids() const;
  std::size_t as_count() const { return as_members_.size(); }
  bool has_as(std::int64_t as_id) const { return as_members_.find(as_id) != as_members_.end(); }
  /// Members of an AS in insertion order; throws on unknown AS.
  const std::vector<RouterId>& as_members(std::int64_t as_id) const;

  void set_weight_floors(double latency_ms, double bandwidth_mbps);
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Structural equality: same routers with the same AS assignment and the
  /// same link set (unordered endpoints, exact weights).
  bool operator==(const Topology& other) const;

 private:
  struct PairKey {
    RouterId lo, hi;
    bool operator==(const PairKey&) const = default;
  };
  struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
      std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ULL;
      h ^= k.hi + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  std::vector<RouterId> ids_;
  std::vector<std::int64_t> as_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Link> links_;
  std::unordered_map<RouterId, std::size_t> index_;
  std::unordered_map<PairKey, std::size_t, PairKeyHash> link_index_;
  std::map<std::int64_t, std::vector<RouterId>> as_members_;
  std::vector<std::string> warnings_;
  double latency_floor_ms_ = kLatencyFloorMs;
  double bandwidth_floor_mbps_ = kBandwidthFloorMbps;
};

/// Per-router edge/backbone split. backbone and edge partition the router set
/// of the topology they were computed from.
struct RouterClassification {
  std::set<RouterId> backbone;
  std::set<RouterId> edge;

  bool is_backbone(RouterId id) const { return backbone.count(id) != 0; }
  bool is_edge(RouterId id) const { return edge.count(id) != 0; }
  bool operator==(const RouterClassification&) const = default;
};

/// Induced subgraph of one AS. `boundary` holds every endpoint (local and
/// remote) of the cross-AS links incident to the AS; the links themselves are
/// not part of `graph`.
struct AsSubgraph {
  Topology graph;
  std::set<RouterId> boundary;
};

AsSubgraph as_subgraph(const Topology& topology, std::int64_t as_id);

/// Induced subgraph on an explicit router set (intra-set links only).
Topology induced_subgraph(const Topology& topology, const std::vector<RouterId>& members);

/// Connected components over the whole topology; each component is sorted
/// ascending and components are ordered by their smallest router id.
std::vector<std::vector<RouterId>> connected_components(const Topology& topology);

/// One AS as a standalone topology (cross-AS links dropped).
Topology extract_as(const Topology& topology, std::int64_t as_id);

/// All AS ids whose router count lies within `tolerance` (a fraction) of
/// `target_n`, ascending.
std::vector<std::int64_t> select_as_by_size(const Topology& topology, std::size_t target_n,
                                            double tolerance);

}  // namespace fogtopo
