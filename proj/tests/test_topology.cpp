#include <doctest.h>

#include <set>

#include "fogtopo/error.hpp"
#include "fogtopo/topology.hpp"
#include "support/test_support.hpp"

using namespace fogtopo;

TEST_CASE("add_router builds the smallest topology") {
  Topology topo;
  topo.add_router(0, 7);
  CHECK(topo.router_count() == 1);
  CHECK(topo.as_count() == 1);
  CHECK(topo.as_of(0) == 7);
  CHECK(topo.degree(0) == 0);
}

TEST_CASE("duplicate router ids are rejected with the offending id") {
  Topology topo;
  topo.add_router(0, 7);
  CHECK_THROWS_WITH_AS(topo.add_router(0, 7), doctest::Contains("0"), Error);
}

TEST_CASE("ten thousand routers insert cleanly") {
  Topology topo;
  for (RouterId id = 0; id < 10000; ++id) topo.add_router(id, 1);
  CHECK(topo.router_count() == 10000);
  for (RouterId id = 0; id < 10000; ++id) {
    REQUIRE(topo.degree(id) == 0);
  }
}

TEST_CASE("add_link updates adjacency symmetrically") {
  Topology topo;
  topo.add_router(0, 1);
  topo.add_router(1, 1);
  topo.add_link({0, 1, 2.0, 1000.0});
  CHECK(topo.degree(0) == 1);
  CHECK(topo.degree(1) == 1);
  CHECK(topo.link_count() == 1);
}

TEST_CASE("self-loops and dangling endpoints are rejected") {
  Topology topo;
  topo.add_router(0, 1);
  CHECK_THROWS_AS(topo.add_link({0, 0, 1.0, 1.0}), Error);
  CHECK_THROWS_WITH_AS(topo.add_link({0, 5, 1.0, 1.0}), doctest::Contains("5"), Error);
}

TEST_CASE("parallel links merge to minimum latency and maximum bandwidth") {
  Topology topo;
  topo.add_router(0, 1);
  topo.add_router(1, 1);
  topo.add_link({0, 1, 2.0, 10.0});
  topo.add_link({1, 0, 5.0, 20.0});
  REQUIRE(topo.link_count() == 1);
  const Link* link = topo.find_link(0, 1);
  REQUIRE(link != nullptr);
  CHECK(link->latency_ms == 2.0);
  CHECK(link->bandwidth_mbps == 20.0);
  CHECK(topo.degree(0) == 1);
}

TEST_CASE("non-positive weights clamp to the floors with a warning") {
  Topology topo;
  topo.add_router(0, 1);
  topo.add_router(1, 1);
  topo.add_link({0, 1, 0.0, -3.0});
  const Link* link = topo.find_link(0, 1);
  CHECK(link->latency_ms == kLatencyFloorMs);
  CHECK(link->bandwidth_mbps == kBandwidthFloorMbps);
  CHECK(topo.warnings().size() == 2);
}

TEST_CASE("degree on star, isolated router, and triangle") {
  Topology topo;
  for (RouterId id = 0; id < 6; ++id) topo.add_router(id, 1);
  for (RouterId leaf = 1; leaf <= 5; ++leaf) topo.add_link({0, leaf, 1.0, 100.0});
  CHECK(topo.degree(0) == 5);

  Topology isolated;
  isolated.add_router(9, 1);
  CHECK(isolated.degree(9) == 0);
  CHECK_THROWS_AS(isolated.degree(10), Error);

  Topology triangle;
  for (RouterId id = 0; id < 3; ++id) triangle.add_router(id, 1);
  triangle.add_link({0, 1, 1.0, 100.0});
  triangle.add_link({1, 2, 1.0, 100.0});
  triangle.add_link({0, 2, 1.0, 100.0});
  CHECK(triangle.degree(1) == 2);
}

namespace {

// Two ASs of two routers, joined by one cross link 1-2.
Topology two_as_fixture() {
  Topology topo;
  topo.add_router(0, 10);
  topo.add_router(1, 10);
  topo.add_router(2, 20);
  topo.add_router(3, 20);
  topo.add_link({0, 1, 1.0, 100.0});
  topo.add_link({2, 3, 1.0, 100.0});
  topo.add_link({1, 2, 5.0, 100.0});
  return topo;
}

}  // namespace

TEST_CASE("as_subgraph drops cross links and records their endpoints") {
  Topology topo = two_as_fixture();
  AsSubgraph first = as_subgraph(topo, 10);
  CHECK(first.graph.router_count() == 2);
  CHECK(first.graph.link_count() == 1);
  CHECK(first.boundary == std::set<RouterId>{1, 2});

  AsSubgraph second = as_subgraph(topo, 20);
  CHECK(second.graph.link_count() == 1);
  CHECK(second.boundary == std::set<RouterId>{1, 2});

  CHECK_THROWS_AS(as_subgraph(topo, 99), Error);
}

TEST_CASE("as_subgraph of a single-AS topology is the topology itself") {
  Topology topo;
  topo.add_router(0, 1);
  topo.add_router(1, 1);
  topo.add_link({0, 1, 2.0, 100.0});
  AsSubgraph sub = as_subgraph(topo, 1);
  CHECK(sub.graph == topo);
  CHECK(sub.boundary.empty());
}

TEST_CASE("as_subgraph of a one-router AS") {
  Topology topo;
  topo.add_router(0, 1);
  AsSubgraph sub = as_subgraph(topo, 1);
  CHECK(sub.graph.router_count() == 1);
  CHECK(sub.graph.link_count() == 0);
}

TEST_CASE("intra-AS degree excludes cross links") {
  Topology topo = two_as_fixture();
  CHECK(topo.degree(1) == 2);
  CHECK(topo.intra_as_degree(1) == 1);
}

TEST_CASE("degree sum stays twice the link count under random construction") {
  testsupport::TestRng rng(11);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 2 + rng.below(40);
    Topology topo = testsupport::random_connected_topology(rng, n, rng.below(30), 5);
    std::size_t degree_sum = 0;
    for (RouterId id : topo.router_ids()) degree_sum += topo.degree(id);
    CHECK(degree_sum == 2 * topo.link_count());
  }
}

TEST_CASE("AS subgraphs plus cross links reconstruct the link set") {
  testsupport::TestRng rng(12);
  for (int round = 0; round < 10; ++round) {
    // Random multi-AS topology.
    Topology topo;
    std::size_t n = 6 + rng.below(30);
    for (RouterId id = 0; id < n; ++id) topo.add_router(id, static_cast<std::int64_t>(rng.below(4)));
    for (RouterId id = 1; id < n; ++id) {
      topo.add_link({id, rng.below(id), static_cast<double>(rng.int_in(1, 5)), 100.0});
    }

    auto key = [](const Link& l) {
      return std::make_tuple(std::min(l.a, l.b), std::max(l.a, l.b), l.latency_ms,
                             l.bandwidth_mbps);
    };
    std::set<std::tuple<RouterId, RouterId, double, double>> original;
    for (const Link& l : topo.links()) original.insert(key(l));

    std::set<std::tuple<RouterId, RouterId, double, double>> rebuilt;
    for (std::int64_t as_id : topo.as_ids()) {
      AsSubgraph sub = as_subgraph(topo, as_id);
      for (const Link& l : sub.graph.links()) rebuilt.insert(key(l));
    }
    for (const Link& l : topo.links()) {
      if (topo.as_of(l.a) != topo.as_of(l.b)) rebuilt.insert(key(l));
    }
    CHECK(rebuilt == original);
  }
}

TEST_CASE("connected_components splits a path plus an isolated router") {
  Topology topo;
  for (RouterId id = 0; id < 4; ++id) topo.add_router(id, 1);
  topo.add_link({0, 1, 1.0, 100.0});
  topo.add_link({1, 2, 1.0, 100.0});
  auto components = connected_components(topo);
  REQUIRE(components.size() == 2);
  CHECK(components[0] == std::vector<RouterId>{0, 1, 2});
  CHECK(components[1] == std::vector<RouterId>{3});
}

TEST_CASE("select_as_by_size applies the relative tolerance inclusively") {
  Topology topo;
  RouterId next = 0;
  auto add_as = [&](std::int64_t as_id, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) topo.add_router(next++, as_id);
  };
  add_as(1, 94);
  add_as(2, 95);
  add_as(3, 100);
  add_as(4, 105);
  add_as(5, 106);

  CHECK(select_as_by_size(topo, 100, 0.05) == std::vector<std::int64_t>{2, 3, 4});
  CHECK(select_as_by_size(topo, 100, 0.0) == std::vector<std::int64_t>{3});

  Topology small;
  for (RouterId id = 0; id < 50; ++id) small.add_router(id, 1);
  CHECK(select_as_by_size(small, 100, 0.05).empty());
}

TEST_CASE("extract_as returns a standalone AS topology") {
  Topology topo = two_as_fixture();
  Topology as10 = extract_as(topo, 10);
  CHECK(as10.router_count() == 2);
  CHECK(as10.link_count() == 1);
  CHECK(as10.as_ids() == std::vector<std::int64_t>{10});
}
