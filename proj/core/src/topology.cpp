#include "fogtopo/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "fogtopo/error.hpp"

namespace fogtopo {

void Topology::add_router(RouterId id, std::int64_t as_id) {
  if (has_router(id)) {
    throw Error("duplicate router id " + std::to_string(id));
  }
  index_.emplace(id, ids_.size());
  ids_.push_back(id);
  as_.push_back(as_id);
  adjacency_.emplace_back();
  as_members_[as_id].push_back(id);
}

std::size_t Topology::index_of(RouterId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error("unknown router id " + std::to_string(id));
  }
  return it->second;
}

void Topology::set_weight_floors(double latency_ms, double bandwidth_mbps) {
  latency_floor_ms_ = latency_ms;
  bandwidth_floor_mbps_ = bandwidth_mbps;
}

void Topology::add_link(Link link) {
  if (link.a == link.b) {
    throw Error("self-loop rejected at router " + std::to_string(link.a));
  }
  auto ia = index_.find(link.a);
  if (ia == index_.end()) {
    throw Error("link references unknown router " + std::to_string(link.a));
  }
  auto ib = index_.find(link.b);
  if (ib == index_.end()) {
    throw Error("link references unknown router " + std::to_string(link.b));
  }
  if (!std::isfinite(link.latency_ms) || !std::isfinite(link.bandwidth_mbps)) {
    throw Error("non-finite link weight between " + std::to_string(link.a) + " and " +
                std::to_string(link.b));
  }
  if (link.latency_ms <= 0.0) {
    std::ostringstream w;
    w << "link " << link.a << "-" << link.b << ": latency " << link.latency_ms
      << " clamped to " << latency_floor_ms_ << " ms";
    warnings_.push_back(w.str());
    link.latency_ms = latency_floor_ms_;
  }
  if (link.bandwidth_mbps <= 0.0) {
    std::ostringstream w;
    w << "link " << link.a << "-" << link.b << ": bandwidth " << link.bandwidth_mbps
      << " clamped to " << bandwidth_floor_mbps_ << " Mbps";
    warnings_.push_back(w.str());
    link.bandwidth_mbps = bandwidth_floor_mbps_;
  }

  PairKey key{std::min(link.a, link.b), std::max(link.a, link.b)};
  auto existing = link_index_.find(key);
  if (existing != link_index_.end()) {
    // Parallel link: keep the best weights the pair offers.
    Link& stored = links_[existing->second];
    stored.latency_ms = std::min(stored.latency_ms, link.latency_ms);
    stored.bandwidth_mbps = std::max(stored.bandwidth_mbps, link.bandwidth_mbps);
    return;
  }

  std::size_t link_idx = links_.size();
  links_.push_back(link);
  link_index_.emplace(key, link_idx);
  adjacency_[ia->second].push_back(
      {static_cast<std::uint32_t>(ib->second), static_cast<std::uint32_t>(link_idx)});
  adjacency_[ib->second].push_back(
      {static_cast<std::uint32_t>(ia->second), static_cast<std::uint32_t>(link_idx)});
}

std::size_t Topology::intra_as_degree(RouterId id) const {
  std::size_t idx = index_of(id);
  std::size_t count = 0;
  for (const Neighbor& n : adjacency_[idx]) {
    if (as_[n.router] == as_[idx]) ++count;
  }
  return count;
}

std::vector<RouterId> Topology::sorted_router_ids() const {
  std::vector<RouterId> out = ids_;
  std::sort(out.begin(), out.end());
  return out;
}

const Link* Topology::find_link(RouterId a, RouterId b) const {
  auto it = link_index_.find(PairKey{std::min(a, b), std::max(a, b)});
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

std::vector<std::int64_t> Topology::as_ids() const {
  std::vector<std::int64_t> out;
  out.reserve(as_members_.size());
  for (const auto& [as_id, members] : as_members_) out.push_back(as_id);
  return out;
}

const std::vector<RouterId>& Topology::as_members(std::int64_t as_id) const {
  auto it = as_members_.find(as_id);
  if (it == as_members_.end()) {
    throw Error("unknown AS " + std::to_string(as_id));
  }
  return it->second;
}

namespace {

struct CanonicalLink {
  RouterId lo, hi;
  double latency, bandwidth;
  bool operator==(const CanonicalLink&) const = default;
  bool operator<(const CanonicalLink& o) const {
    return std::tie(lo, hi) < std::tie(o.lo, o.hi);
  }
};

std::vector<CanonicalLink> canonical_links(const Topology& t) {
  std::vector<CanonicalLink> out;
  out.reserve(t.link_count());
  for (const Link& l : t.links()) {
    out.push_back({std::min(l.a, l.b), std::max(l.a, l.b), l.latency_ms, l.bandwidth_mbps});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool Topology::operator==(const Topology& other) const {
  if (router_count() != other.router_count() || link_count() != other.link_count()) return false;
  for (RouterId id : ids_) {
    if (!other.has_router(id) || other.as_of(id) != as_of(id)) return false;
  }
  return canonical_links(*this) == canonical_links(other);
}

AsSubgraph as_subgraph(const Topology& topology, std::int64_t as_id) {
  const std::vector<RouterId>& members = topology.as_members(as_id);  // throws on unknown AS
  AsSubgraph out;
  for (RouterId id : members) out.graph.add_router(id, as_id);
  for (const Link& l : topology.links()) {
    bool a_in = topology.as_of(l.a) == as_id;
    bool b_in = topology.as_of(l.b) == as_id;
    if (a_in && b_in) {
      out.graph.add_link(l);
    } else if (a_in || b_in) {
      out.boundary.insert(l.a);
      out.boundary.insert(l.b);
    }
  }
  return out;
}

Topology induced_subgraph(const Topology& topology, const std::vector<RouterId>& members) {
  Topology out;
  for (RouterId id : members) out.add_router(id, topology.as_of(id));
  for (const Link& l : topology.links()) {
    if (out.has_router(l.a) && out.has_router(l.b)) out.add_link(l);
  }
  return out;
}

std::vector<std::vector<RouterId>> connected_components(const Topology& topology) {
  std::vector<bool> seen(topology.router_count(), false);
  std::vector<std::vector<RouterId>> components;
  for (std::size_t start = 0; start < topology.router_count(); ++start) {
    if (seen[start]) continue;
    std::vector<RouterId> component;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      component.push_back(topology.id_at(v));
      for (const Topology::Neighbor& n : topology.neighbors_at(v)) {
        if (!seen[n.router]) {
          seen[n.router] = true;
          queue.push_back(n.router);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

Topology extract_as(const Topology& topology, std::int64_t as_id) {
  return as_subgraph(topology, as_id).graph;
}

std::vector<std::int64_t> select_as_by_size(const Topology& topology, std::size_t target_n,
                                            double tolerance) {
  // Epsilon absorbs float noise in the interval bounds so that e.g.
  // n=100, tolerance=0.05 admits exactly 95..105 routers.
  double lo = static_cast<double>(target_n) * (1.0 - tolerance) - 1e-9;
  double hi = static_cast<double>(target_n) * (1.0 + tolerance) + 1e-9;
  std::vector<std::int64_t> out;
  for (std::int64_t as_id : topology.as_ids()) {
    double size = static_cast<double>(topology.as_members(as_id).size());
    if (size >= lo && size <= hi) out.push_back(as_id);
  }
  return out;
}

}  // namespace fogtopo
