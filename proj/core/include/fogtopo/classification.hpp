#pragma once

#include <set>

#include "fogtopo/topology.hpp"

namespace fogtopo {

/// Degree notion used when comparing a router against its AS average.
/// kTotal counts every incident link, cross-AS ones included; kIntraAs counts
/// only links whose peer shares the AS.
enum class DegreeMode { kTotal, kIntraAs };

struct ClassifyOptions {
  DegreeMode degree_mode = DegreeMode::kTotal;
};

/// Routers incident to at least one link whose endpoints lie in different ASs
/// (border routers).
std::set<RouterId> mark_cross_as_routers(const Topology& topology);

/// Routers of the AS, not already backbone, whose degree is strictly above
/// the AS-wide average. The average runs over all routers of the AS,
/// already-backbone ones included.
std::set<RouterId> mark_high_degree_routers(const Topology& topology, std::int64_t as_id,
                                            const std::set<RouterId>& already_backbone,
                                            DegreeMode mode = DegreeMode::kTotal);

/// Extends `backbone` to a superset inducing a connected subgraph of
/// `as_graph` via a modified BFS: whenever a dequeued backbone router's parent
/// chain leaves the set, the consecutive non-backbone ancestors are absorbed;
/// discovered neighbors get their parent re-pointed to a backbone router when
/// that shortens their chain back to the set.
///
/// `as_graph` must be connected and `backbone` a non-empty subset of its
/// routers; violations throw Error. The BFS seeds from the smallest backbone
/// router id.
std::set<RouterId> connect_backbone(const Topology& as_graph, const std::set<RouterId>& backbone);

/// Full edge/backbone classification: border routers, then high-degree
/// routers, then per-AS per-component backbone connection. Components whose
/// backbone is empty after the first two steps stay entirely edge.
RouterClassification classify(const Topology& topology, const ClassifyOptions& options = {});

}  // namespace fogtopo
