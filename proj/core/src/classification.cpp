#include "fogtopo/classification.hpp"

#include <deque>
#include <optional>
#include <vector>

#include "fogtopo/error.hpp"

namespace fogtopo {

std::set<RouterId> mark_cross_as_routers(const Topology& topology) {
  std::set<RouterId> out;
  for (const Link& l : topology.links()) {
    if (topology.as_of(l.a) != topology.as_of(l.b)) {
      out.insert(l.a);
      out.insert(l.b);
    }
  }
  return out;
}

std::set<RouterId> mark_high_degree_routers(const Topology& topology, std::int64_t as_id,
                                            const std::set<RouterId>& already_backbone,
                                            DegreeMode mode) {
  const std::vector<RouterId>& members = topology.as_members(as_id);
  auto degree_of = [&](RouterId id) {
    return mode == DegreeMode::kTotal ? topology.degree(id) : topology.intra_as_degree(id);
  };

  std::size_t degree_sum = 0;
  for (RouterId id : members) degree_sum += degree_of(id);

  // deg > degree_sum / |AS|, kept in integers so ties are exact.
  std::set<RouterId> out;
  for (RouterId id : members) {
    if (already_backbone.count(id)) continue;
    if (degree_of(id) * members.size() > degree_sum) out.insert(id);
  }
  return out;
}

std::set<RouterId> connect_backbone(const Topology& as_graph, const std::set<RouterId>& backbone) {
  if (backbone.empty()) {
    throw Error("connect_backbone requires a non-empty backbone seed");
  }
  for (RouterId id : backbone) {
    if (!as_graph.has_router(id)) {
      throw Error("backbone router " + std::to_string(id) + " is not in the AS graph");
    }
  }

  const std::size_t n = as_graph.router_count();
  std::set<RouterId> result = backbone;
  auto in_backbone = [&](std::size_t idx) { return result.count(as_graph.id_at(idx)) != 0; };

  constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, kNoParent);
  std::vector<bool> discovered(n, false);
  std::deque<std::size_t> queue;

  std::size_t root = as_graph.index_of(*backbone.begin());  // smallest id in the set
  discovered[root] = true;
  queue.push_back(root);
  std::size_t dequeued = 0;

  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    ++dequeued;

    // Connection stage: absorb the non-backbone ancestors of a backbone
    // router. The walk stops at the first backbone member (the chain always
    // reaches one, since the root is in the set) or at the chain end.
    if (in_backbone(v) && parent[v] != kNoParent && !in_backbone(parent[v])) {
      std::size_t p = parent[v];
      while (p != kNoParent && !in_backbone(p)) {
        result.insert(as_graph.id_at(p));
        p = parent[p];
      }
    }

    // Expansion stage.
    for (const Topology::Neighbor& nb : as_graph.neighbors_at(v)) {
      std::size_t n_idx = nb.router;
      if (!discovered[n_idx]) {
        discovered[n_idx] = true;
        parent[n_idx] = v;
        queue.push_back(n_idx);
      } else if (in_backbone(v) && parent[n_idx] != kNoParent && !in_backbone(parent[n_idx])) {
        // Shortcut: pointing n at a backbone router minimizes the routers a
        // later connection stage would absorb.
        parent[n_idx] = v;
      }
    }
  }

  if (dequeued != n) {
    throw Error("connect_backbone requires a connected AS graph (reached " +
                std::to_string(dequeued) + " of " + std::to_string(n) + " routers)");
  }
  return result;
}

RouterClassification classify(const Topology& topology, const ClassifyOptions& options) {
  RouterClassification out;
  const std::set<RouterId> border = mark_cross_as_routers(topology);

  // One pass groups intra-AS links, so per-AS subgraph construction stays
  // linear even on datasets with many thousands of ASs.
  std::map<std::int64_t, std::vector<std::size_t>> intra_links;
  for (std::size_t i = 0; i < topology.links().size(); ++i) {
    const Link& l = topology.links()[i];
    std::int64_t as_a = topology.as_of(l.a);
    if (as_a == topology.as_of(l.b)) intra_links[as_a].push_back(i);
  }

  for (std::int64_t as_id : topology.as_ids()) {
    std::set<RouterId> base;
    for (RouterId id : topology.as_members(as_id)) {
      if (border.count(id)) base.insert(id);
    }
    std::set<RouterId> high =
        mark_high_degree_routers(topology, as_id, base, options.degree_mode);
    base.insert(high.begin(), high.end());

    Topology as_graph;
    for (RouterId id : topology.as_members(as_id)) as_graph.add_router(id, as_id);
    if (auto it = intra_links.find(as_id); it != intra_links.end()) {
      for (std::size_t link_idx : it->second) as_graph.add_link(topology.links()[link_idx]);
    }

    for (const std::vector<RouterId>& component : connected_components(as_graph)) {
      std::set<RouterId> component_backbone;
      for (RouterId id : component) {
        if (base.count(id)) component_backbone.insert(id);
      }
      if (component_backbone.empty()) continue;  // stays all-edge
      Topology component_graph = induced_subgraph(as_graph, component);
      std::set<RouterId> connected = connect_backbone(component_graph, component_backbone);
      out.backbone.insert(connected.begin(), connected.end());
    }
  }

  for (RouterId id : topology.router_ids()) {
    if (!out.backbone.count(id)) out.edge.insert(id);
  }
  return out;
}

}  // namespace fogtopo
