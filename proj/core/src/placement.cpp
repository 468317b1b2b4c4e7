#include "fogtopo/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace fogtopo {

int Configuration::total_count() const {
  int n = 0;
  for (const NodeGroup& g : nodes) n += g.count;
  return n;
}

long long Configuration::total_capacity() const {
  long long c = 0;
  for (const NodeGroup& g : nodes) c += static_cast<long long>(g.type.max_clients) * g.count;
  return c;
}

std::uint64_t Placement::node_instances() const {
  std::uint64_t n = 0;
  for (const auto& [router, groups] : assignments) {
    for (const NodeGroup& g : groups) n += static_cast<std::uint64_t>(g.count);
  }
  return n;
}

PlacementInfeasible::PlacementInfeasible(std::vector<RouterId> uncovered, Placement partial)
    : Error("placement would exceed max_total_nodes with " + std::to_string(uncovered.size()) +
            " edge router(s) still uncovered"),
      uncovered_(std::move(uncovered)),
      partial_(std::move(partial)) {}

namespace detail {

// Single-source shortest paths with an early cutoff, reusing scratch buffers
// across runs via epoch stamps.
class BoundedDijkstra {
 public:
  explicit BoundedDijkstra(const Topology& topo)
      : topo_(topo),
        dist_(topo.router_count(), 0.0),
        reached_(topo.router_count(), 0),
        settled_(topo.router_count(), 0) {}

  /// Calls visit(router_index, distance) for every router within `bound` of
  /// `source`, in ascending-distance order; the source itself is visited at 0.
  template <typename Visit>
  void run(std::size_t source, double bound, bool cross_as, Visit&& visit) {
    ++run_;
    heap_.clear();
    const std::int64_t source_as = topo_.as_at(source);
    dist_[source] = 0.0;
    reached_[source] = run_;
    heap_.push_back({0.0, static_cast<std::uint32_t>(source)});

    auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      Entry top = heap_.back();
      heap_.pop_back();
      std::uint32_t v = top.second;
      if (settled_[v] == run_) continue;
      settled_[v] = run_;
      visit(static_cast<std::size_t>(v), top.first);

      for (const Topology::Neighbor& nb : topo_.neighbors_at(v)) {
        if (settled_[nb.router] == run_) continue;
        if (!cross_as && topo_.as_at(nb.router) != source_as) continue;
        double nd = top.first + topo_.links()[nb.link].latency_ms;
        if (nd > bound) continue;
        if (reached_[nb.router] == run_ && dist_[nb.router] <= nd) continue;
        dist_[nb.router] = nd;
        reached_[nb.router] = run_;
        heap_.push_back({nd, nb.router});
        std::push_heap(heap_.begin(), heap_.end(), cmp);
      }
    }
  }

 private:
  using Entry = std::pair<double, std::uint32_t>;
  const Topology& topo_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> reached_;
  std::vector<std::uint32_t> settled_;
  std::vector<Entry> heap_;
  std::uint32_t run_ = 0;
};

// Unbounded covering knapsack over "cheapest way to serve at least d clients",
// grown lazily and shared across all candidates of a placement run.
class ConfigurationSolver {
 public:
  explicit ConfigurationSolver(std::vector<FogNodeType> types) : types_(std::move(types)) {
    if (types_.empty()) throw Error("configuration solver requires at least one node type");
    for (const FogNodeType& t : types_) {
      if (t.max_clients < 1) {
        throw Error("node type '" + t.name + "' must serve at least one client");
      }
      if (t.cost <= 0.0) throw Error("node type '" + t.name + "' must have positive cost");
    }
    std::sort(types_.begin(), types_.end(),
              [](const FogNodeType& a, const FogNodeType& b) { return a.name < b.name; });
    cost_ = {0.0};
    count_ = {0};
    choice_ = {-1};
  }

  double cost_for(long long demand) {
    extend(demand);
    return cost_[static_cast<std::size_t>(std::max<long long>(0, demand))];
  }

  Configuration configuration_for(long long demand) {
    extend(demand);
    std::vector<int> per_type(types_.size(), 0);
    long long d = std::max<long long>(0, demand);
    double total = cost_[static_cast<std::size_t>(d)];
    while (d > 0) {
      int t = choice_[static_cast<std::size_t>(d)];
      ++per_type[static_cast<std::size_t>(t)];
      d = std::max<long long>(0, d - types_[static_cast<std::size_t>(t)].max_clients);
    }
    Configuration out;
    out.cost = total;
    for (std::size_t i = 0; i < types_.size(); ++i) {
      if (per_type[i] > 0) out.nodes.push_back({types_[i], per_type[i]});
    }
    return out;
  }

 private:
  void extend(long long demand) {
    while (static_cast<long long>(cost_.size()) <= demand) {
      long long d = static_cast<long long>(cost_.size());
      double best_cost = std::numeric_limits<double>::infinity();
      int best_count = 0;
      int best_choice = -1;
      for (std::size_t t = 0; t < types_.size(); ++t) {
        long long prev = d > types_[t].max_clients ? d - types_[t].max_clients : 0;
        double c = cost_[static_cast<std::size_t>(prev)] + types_[t].cost;
        int k = count_[static_cast<std::size_t>(prev)] + 1;
        if (best_choice < 0 || c < best_cost || (c == best_cost && k < best_count)) {
          best_cost = c;
          best_count = k;
          best_choice = static_cast<int>(t);
        }
      }
      cost_.push_back(best_cost);
      count_.push_back(best_count);
      choice_.push_back(best_choice);
    }
  }

  std::vector<FogNodeType> types_;  // sorted by name
  std::vector<double> cost_;
  std::vector<int> count_;
  std::vector<int> choice_;
};

}  // namespace detail

std::map<RouterId, double> bounded_latencies(const Topology& topology, RouterId source,
                                             double bound_ms, bool cross_as_paths) {
  if (bound_ms <= 0.0) throw Error("latency bound must be positive");
  std::size_t source_idx = topology.index_of(source);
  detail::BoundedDijkstra dijkstra(topology);
  std::map<RouterId, double> out;
  dijkstra.run(source_idx, bound_ms, cross_as_paths,
               [&](std::size_t idx, double d) { out.emplace(topology.id_at(idx), d); });
  return out;
}

long long client_demand(int coverage, double edge_occupancy) {
  double product = static_cast<double>(coverage) * edge_occupancy;
  double rounded = std::round(product);
  double value = std::abs(product - rounded) < 1e-9 ? rounded : std::ceil(product);
  return std::max<long long>(1, static_cast<long long>(value));
}

Configuration optimal_configuration(long long demand_clients,
                                    const std::vector<FogNodeType>& node_types) {
  if (demand_clients < 1) throw Error("demand must be at least one client");
  detail::ConfigurationSolver solver(node_types);
  return solver.configuration_for(demand_clients);
}

std::vector<Candidate> determine_candidates(const Topology& topology,
                                            const std::set<RouterId>& uncovered_edges,
                                            const FogConfig& config,
                                            const PlacementOptions& options,
                                            const std::set<RouterId>* host_allowlist) {
  validate(config);
  std::map<RouterId, std::vector<RouterId>> ranges;
  detail::BoundedDijkstra dijkstra(topology);
  for (RouterId a : uncovered_edges) {
    dijkstra.run(topology.index_of(a), config.latency_threshold_ms, options.cross_as_paths,
                 [&](std::size_t idx, double) {
                   RouterId v = topology.id_at(idx);
                   if (host_allowlist && !host_allowlist->count(v)) return;
                   ranges[v].push_back(a);  // ascending, since a iterates ascending
                 });
  }

  detail::ConfigurationSolver solver(config.node_types);
  std::vector<Candidate> out;
  out.reserve(ranges.size());
  for (auto& [router, range] : ranges) {
    Candidate c;
    c.router = router;
    c.coverage = static_cast<int>(range.size());
    c.range = std::move(range);
    c.configuration = solver.configuration_for(client_demand(c.coverage, config.edge_occupancy));
    c.cost = c.configuration.cost;
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Deterministic greedy order: higher coverage/cost ratio, then larger
// coverage, then lower router id. Ratios compare as cross products.
bool beats(int cov_a, double cost_a, RouterId a, int cov_b, double cost_b, RouterId b) {
  double lhs = static_cast<double>(cov_a) * cost_b;
  double rhs = static_cast<double>(cov_b) * cost_a;
  if (lhs != rhs) return lhs > rhs;
  if (cov_a != cov_b) return cov_a > cov_b;
  return a < b;
}

void merge_groups(std::vector<NodeGroup>& into, const Configuration& configuration) {
  for (const NodeGroup& g : configuration.nodes) {
    auto it = std::find_if(into.begin(), into.end(),
                           [&](const NodeGroup& h) { return h.type.name == g.type.name; });
    if (it != into.end()) {
      it->count += g.count;
    } else {
      into.push_back(g);
    }
  }
  std::sort(into.begin(), into.end(),
            [](const NodeGroup& x, const NodeGroup& y) { return x.type.name < y.type.name; });
}

}  // namespace

namespace {

// Per-source latency ball, cached across greedy iterations (balls never
// change; only the uncovered set shrinks). Small balls are kept as sorted
// index vectors; large ones as bitsets while the memory budget lasts; the
// rest are recomputed on demand.
class BallCache {
 public:
  BallCache(std::size_t router_count, std::size_t budget_bytes)
      : router_count_(router_count), budget_(budget_bytes) {}

  static constexpr std::size_t kSmallLimit = 1024;

  bool contains_source(std::size_t src) const { return balls_.count(src) != 0; }

  template <typename Sink>
  bool replay(std::size_t src, Sink&& sink) const {
    auto it = balls_.find(src);
    if (it == balls_.end()) return false;
    const Ball& ball = it->second;
    if (!ball.bits.empty()) {
      for (std::size_t word = 0; word < ball.bits.size(); ++word) {
        std::uint64_t w = ball.bits[word];
        while (w != 0) {
          unsigned bit = static_cast<unsigned>(__builtin_ctzll(w));
          sink(word * 64 + bit);
          w &= w - 1;
        }
      }
    } else {
      for (std::uint32_t v : ball.members) sink(v);
    }
    return true;
  }

  // -1 unknown (not cached), 0 no, 1 yes.
  int contains(std::size_t src, std::size_t member) const {
    auto it = balls_.find(src);
    if (it == balls_.end()) return -1;
    const Ball& ball = it->second;
    if (!ball.bits.empty()) {
      return (ball.bits[member / 64] >> (member % 64)) & 1 ? 1 : 0;
    }
    return std::binary_search(ball.members.begin(), ball.members.end(),
                              static_cast<std::uint32_t>(member))
               ? 1
               : 0;
  }

  void store(std::size_t src, std::vector<std::uint32_t>&& members) {
    if (members.size() <= kSmallLimit) {
      std::sort(members.begin(), members.end());
      balls_.emplace(src, Ball{std::move(members), {}});
      return;
    }
    std::size_t words = (router_count_ + 63) / 64;
    if (words * sizeof(std::uint64_t) > budget_) return;  // stays uncached
    budget_ -= words * sizeof(std::uint64_t);
    Ball ball;
    ball.bits.assign(words, 0);
    for (std::uint32_t v : members) ball.bits[v / 64] |= 1ULL << (v % 64);
    balls_.emplace(src, std::move(ball));
  }

  void erase(std::size_t src) {
    auto it = balls_.find(src);
    if (it == balls_.end()) return;
    if (!it->second.bits.empty()) budget_ += it->second.bits.size() * sizeof(std::uint64_t);
    balls_.erase(it);
  }

 private:
  struct Ball {
    std::vector<std::uint32_t> members;  // sorted, when small
    std::vector<std::uint64_t> bits;     // when large and budgeted
  };
  std::size_t router_count_;
  std::size_t budget_;
  std::unordered_map<std::size_t, Ball> balls_;
};

}  // namespace

Placement place_fog_nodes(const Topology& topology, const RouterClassification& classification,
                          const FogConfig& config, const PlacementOptions& options,
                          PlacementTrace* trace) {
  validate(config);
  if (classification.backbone.size() + classification.edge.size() != topology.router_count()) {
    throw Error("classification does not partition the router set");
  }
  for (RouterId id : classification.edge) {
    topology.index_of(id);  // rejects classifications for a different topology
    if (classification.backbone.count(id)) {
      throw Error("router " + std::to_string(id) + " is both edge and backbone");
    }
  }

  Placement out;
  std::set<RouterId> uncovered = classification.edge;
  if (uncovered.empty()) return out;

  const std::size_t n = topology.router_count();
  const double bound = config.latency_threshold_ms;
  detail::BoundedDijkstra dijkstra(topology);
  detail::ConfigurationSolver solver(config.node_types);

  std::vector<bool> allowed;
  if (options.restrict_to_edge) {
    allowed.assign(n, false);
    for (RouterId id : classification.edge) allowed[topology.index_of(id)] = true;
  }
  auto is_allowed = [&](std::size_t idx) { return allowed.empty() || allowed[idx]; };

  BallCache cache(n, 64u << 20);
  std::vector<std::uint32_t> scratch;
  auto ball_of = [&](std::size_t src, auto&& sink) {
    if (cache.replay(src, sink)) return;
    scratch.clear();
    dijkstra.run(src, bound, options.cross_as_paths, [&](std::size_t idx, double) {
      if (!is_allowed(idx)) return;
      scratch.push_back(static_cast<std::uint32_t>(idx));
      sink(idx);
    });
    cache.store(src, std::move(scratch));
    scratch = {};
  };

  std::vector<int> coverage(n, 0);
  std::vector<std::uint32_t> touched;
  std::uint64_t placed_instances = 0;

  while (!uncovered.empty()) {
    // Candidate coverage counts against the current uncovered set.
    for (std::uint32_t idx : touched) coverage[idx] = 0;
    touched.clear();
    for (RouterId a : uncovered) {
      ball_of(topology.index_of(a), [&](std::size_t idx) {
        if (coverage[idx]++ == 0) touched.push_back(static_cast<std::uint32_t>(idx));
      });
    }

    // Highest coverage/cost ratio wins; beats() breaks ties deterministically,
    // so the scan order does not matter.
    bool have_best = false;
    std::size_t best_index = 0;
    RouterId best_router = 0;
    int best_cov = 0;
    double best_cost = 0.0;
    for (std::uint32_t idx : touched) {
      int cov = coverage[idx];
      RouterId router = topology.id_at(idx);
      double cost = solver.cost_for(client_demand(cov, config.edge_occupancy));
      if (!have_best || beats(cov, cost, router, best_cov, best_cost, best_router)) {
        have_best = true;
        best_index = idx;
        best_router = router;
        best_cov = cov;
        best_cost = cost;
      }
    }
    // Every uncovered edge router is inside its own ball, so a candidate
    // always exists.

    Configuration configuration =
        solver.configuration_for(client_demand(best_cov, config.edge_occupancy));
    if (config.max_total_nodes && placed_instances + static_cast<std::uint64_t>(
                                      configuration.total_count()) > *config.max_total_nodes) {
      throw PlacementInfeasible(std::vector<RouterId>(uncovered.begin(), uncovered.end()), out);
    }

    if (trace) {
      PlacementIteration record;
      record.uncovered_before.assign(uncovered.begin(), uncovered.end());
      record.candidate_count = touched.size();
      record.selected = best_router;
      record.coverage = best_cov;
      record.cost = best_cost;
      trace->push_back(std::move(record));
    }

    // The selected router's range, from the same forward searches that
    // produced the coverage counts.
    std::vector<RouterId> range;
    for (RouterId a : uncovered) {
      std::size_t a_idx = topology.index_of(a);
      int hit = cache.contains(a_idx, best_index);
      if (hit < 0) {
        hit = 0;
        ball_of(a_idx, [&](std::size_t idx) {
          if (idx == best_index) hit = 1;
        });
      }
      if (hit == 1) range.push_back(a);
    }

    for (RouterId a : range) {
      out.covered_by.emplace(a, best_router);
      uncovered.erase(a);
      cache.erase(topology.index_of(a));
    }
    merge_groups(out.assignments[best_router], configuration);
    out.total_cost += configuration.cost;
    placed_instances += static_cast<std::uint64_t>(configuration.total_count());
  }

  return out;
}

}  // namespace fogtopo
