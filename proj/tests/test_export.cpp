#include <doctest.h>

#include <json.hpp>

#include "fogtopo/classification.hpp"
#include "fogtopo/deployment.hpp"
#include "fogtopo/dot.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/generator.hpp"
#include "fogtopo/interchange.hpp"
#include "fogtopo/placement.hpp"
#include "support/test_support.hpp"

using namespace fogtopo;
using nlohmann::json;

namespace {

Topology three_router_path() {
  Topology topo;
  for (RouterId id = 0; id < 3; ++id) topo.add_router(id, 1);
  topo.add_link({0, 1, 3.0, 1000.0});
  topo.add_link({1, 2, 3.0, 1000.0});
  return topo;
}

FogConfig small_config(double threshold) {
  FogConfig config;
  config.node_types.push_back({"small", 10, 3.0, "fog/small:latest", {}, {}});
  config.edge_occupancy = 1.0;
  config.latency_threshold_ms = threshold;
  return config;
}

}  // namespace

TEST_CASE("an empty topology exports empty arrays and round-trips") {
  Topology empty;
  std::string doc = export_interchange(empty);
  CHECK(doc.find("\"routers\": []") != std::string::npos);
  CHECK(doc.find("\"links\": []") != std::string::npos);
  InterchangeDocument imported = import_interchange(doc);
  CHECK(imported.topology.router_count() == 0);
  CHECK(!imported.classification);
  CHECK(!imported.placement);
}

TEST_CASE("interchange export is byte-stable") {
  Topology topo = three_router_path();
  CHECK(export_interchange(topo) == export_interchange(topo));
}

TEST_CASE("interchange round-trips topology, classification, and placement") {
  Topology topo = three_router_path();
  RouterClassification cls = classify(topo);
  Placement placement = place_fog_nodes(topo, cls, small_config(4.0));

  std::string doc = export_interchange(topo, &cls, &placement);
  InterchangeDocument imported = import_interchange(doc);
  CHECK(imported.topology == topo);
  REQUIRE(imported.classification);
  CHECK(*imported.classification == cls);
  REQUIRE(imported.placement);
  CHECK(*imported.placement == placement);

  // And the re-export is byte-identical.
  CHECK(export_interchange(imported.topology, &*imported.classification, &*imported.placement) ==
        doc);
}

TEST_CASE("interchange round-trips random enhanced topologies") {
  testsupport::TestRng rng(9);
  for (int round = 0; round < 10; ++round) {
    Topology topo = testsupport::random_connected_topology(rng, 4 + rng.below(25), 10, 4);
    RouterClassification cls = classify(topo);
    FogConfig config;
    config.node_types = testsupport::random_node_types(rng, rng.int_in(1, 3));
    config.node_types[0].memory_mb = 512;
    config.node_types[0].cpu_share = 0.5;
    config.edge_occupancy = rng.real(0.5, 2.0);
    config.latency_threshold_ms = 4.0;
    Placement placement = place_fog_nodes(topo, cls, config);

    InterchangeDocument imported =
        import_interchange(export_interchange(topo, &cls, &placement));
    REQUIRE(imported.topology == topo);
    REQUIRE(*imported.classification == cls);
    REQUIRE(*imported.placement == placement);
  }
}

TEST_CASE("dangling references are rejected by name") {
  Topology topo = three_router_path();
  RouterClassification cls{{1}, {0, 2, 9}};
  CHECK_THROWS_WITH_AS(export_interchange(topo, &cls), doctest::Contains("9"), Error);

  Placement placement;
  placement.assignments[42] = {{{"small", 10, 3.0, "", {}, {}}, 1}};
  CHECK_THROWS_WITH_AS(export_interchange(topo, nullptr, &placement), doctest::Contains("42"),
                       Error);
}

TEST_CASE("import rejects unknown schema versions and roles") {
  CHECK_THROWS_AS(import_interchange("{\"schema_version\": 2, \"routers\": [], \"links\": []}"),
                  ParseError);
  CHECK_THROWS_AS(import_interchange("not json"), ParseError);
  CHECK_THROWS_AS(import_interchange("{\"schema_version\": 1, \"routers\": "
                                     "[{\"id\": 0, \"as\": 1, \"role\": \"wat\"}], \"links\": []}"),
                  ParseError);
  // Roles must cover every router or none.
  CHECK_THROWS_AS(
      import_interchange("{\"schema_version\": 1, \"routers\": "
                         "[{\"id\": 0, \"as\": 1, \"role\": \"edge\"}, {\"id\": 1, \"as\": 1}], "
                         "\"links\": []}"),
      ParseError);
}

TEST_CASE("deployment descriptor lists switches, links, and one host per instance") {
  Topology topo = three_router_path();
  RouterClassification cls = classify(topo);
  FogConfig config = small_config(4.0);
  Placement placement = place_fog_nodes(topo, cls, config);

  json doc = json::parse(export_deployment(topo, cls, placement, config, "test"));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["switches"].size() == 3);
  CHECK(doc["links"].size() == 2);
  REQUIRE(doc["fog_hosts"].size() == 1);
  CHECK(doc["fog_hosts"][0]["router"] == 1);
  CHECK(doc["fog_hosts"][0]["type"] == "small");
  CHECK(doc["fog_hosts"][0]["image"] == "fog/small:latest");
  CHECK(doc["fog_hosts"][0]["link"]["latency_ms"] == 0.001);
  CHECK(doc["fog_hosts"][0]["link"]["bandwidth_mbps"] == 1000.0);
  CHECK(doc["clients_per_edge"] == 1.0);
  CHECK(doc["metadata"]["provenance"] == "test");
  CHECK(doc["metadata"]["config_digest"].get<std::string>().size() == 16);
  CHECK(doc["metadata"]["tool_version"] == "0.1.0");
}

TEST_CASE("a two-instance assignment yields two hosts on the same switch") {
  Topology topo;
  topo.add_router(5, 1);
  RouterClassification cls{{}, {5}};
  FogConfig config = small_config(2.0);
  config.node_types[0].max_clients = 1;
  config.edge_occupancy = 2.0;  // demand 2 -> two cap-1 instances
  Placement placement = place_fog_nodes(topo, cls, config);

  json doc = json::parse(export_deployment(topo, cls, placement, config));
  REQUIRE(doc["fog_hosts"].size() == 2);
  CHECK(doc["fog_hosts"][0]["router"] == 5);
  CHECK(doc["fog_hosts"][1]["router"] == 5);
  CHECK(doc["fog_hosts"][0]["id"] != doc["fog_hosts"][1]["id"]);
}

TEST_CASE("an all-backbone topology deploys no fog hosts") {
  Topology topo = three_router_path();
  RouterClassification cls{{0, 1, 2}, {}};
  FogConfig config = small_config(2.0);
  Placement placement = place_fog_nodes(topo, cls, config);
  json doc = json::parse(export_deployment(topo, cls, placement, config));
  CHECK(doc["fog_hosts"].empty());
  CHECK(doc["switches"].size() == 3);
}

TEST_CASE("deployment host count equals the placement instance total") {
  testsupport::TestRng rng(14);
  for (int round = 0; round < 5; ++round) {
    Topology topo = testsupport::random_connected_topology(rng, 5 + rng.below(20), 8, 4);
    RouterClassification cls = classify(topo);
    FogConfig config;
    config.node_types = testsupport::random_node_types(rng, 2);
    config.edge_occupancy = 2.0;
    config.latency_threshold_ms = 3.0;
    Placement placement = place_fog_nodes(topo, cls, config);
    json doc = json::parse(export_deployment(topo, cls, placement, config));
    CHECK(doc["fog_hosts"].size() == placement.node_instances());
  }
}

TEST_CASE("incomplete placements are rejected with the uncovered routers") {
  Topology topo = three_router_path();
  RouterClassification cls = classify(topo);
  Placement empty;
  CHECK_THROWS_WITH_AS(export_deployment(topo, cls, empty, small_config(4.0)),
                       doctest::Contains("uncovered"), Error);
}

TEST_CASE("dot export styles nodes by role and fog assignment") {
  Topology topo = three_router_path();

  std::string plain = export_dot(topo);
  CHECK(plain.find("r0 [shape=circle];") != std::string::npos);

  RouterClassification cls = classify(topo);
  std::string classified = export_dot(topo, &cls);
  CHECK(classified.find("r1 [shape=box, style=filled, fillcolor=gray40];") != std::string::npos);
  CHECK(classified.find("r0 [shape=circle, style=filled, fillcolor=gray70];") !=
        std::string::npos);

  FogConfig config = small_config(4.0);
  Placement placement = place_fog_nodes(topo, cls, config);
  std::string enhanced = export_dot(topo, &cls, &placement);
  CHECK(enhanced.find("r1 [shape=doublecircle, style=filled, fillcolor=white];") !=
        std::string::npos);
  CHECK(enhanced.find("r0 -- r1 [label=\"3\"];") != std::string::npos);
}

TEST_CASE("dot export of a single unclassified router") {
  Topology topo;
  topo.add_router(0, 1);
  CHECK(export_dot(topo) == "graph fogtopo {\n  node [fontsize=10];\n  r0 [shape=circle];\n}\n");
}

TEST_CASE("exporters are pure functions of their inputs") {
  Topology topo = generate_barabasi_albert({30, 2, 4});
  RouterClassification cls = classify(topo);
  FogConfig config = small_config(5.0);
  Placement placement = place_fog_nodes(topo, cls, config);
  CHECK(export_dot(topo, &cls, &placement) == export_dot(topo, &cls, &placement));
  CHECK(export_deployment(topo, cls, placement, config, "p") ==
        export_deployment(topo, cls, placement, config, "p"));
}
