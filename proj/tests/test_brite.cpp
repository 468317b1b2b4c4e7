#include <doctest.h>

#include <string>

#include "fogtopo/brite.hpp"
#include "fogtopo/error.hpp"

using namespace fogtopo;

namespace {

const std::string kMinimal =
    "Topology: ( 2 Nodes, 1 Edges )\n"
    "Model (1 - RTWaxman): 2 100 100 1 2 1 0.15 0.2 1 1 10.0 1024.0\n"
    "\n"
    "Nodes: ( 2 )\n"
    "0 41.0 43.0 1 1 7 RT_NODE\n"
    "1 16.0 25.0 1 1 7 RT_NODE\n"
    "\n"
    "Edges: ( 1 )\n"
    "0 0 1 25.0 1.5 10.0 7 7 E_RT U\n";

}  // namespace

TEST_CASE("minimal BRITE file parses delay and bandwidth") {
  Topology topo = parse_brite_text(kMinimal);
  CHECK(topo.router_count() == 2);
  CHECK(topo.as_of(0) == 7);
  REQUIRE(topo.link_count() == 1);
  const Link* link = topo.find_link(0, 1);
  REQUIRE(link != nullptr);
  CHECK(link->latency_ms == 1.5);
  CHECK(link->bandwidth_mbps == 10.0);
}

TEST_CASE("an edge referencing a missing node names it with the line") {
  std::string text =
      "Nodes: ( 2 )\n"
      "0 0 0 1 1 7 RT_NODE\n"
      "1 0 0 1 1 7 RT_NODE\n"
      "\n"
      "Edges: ( 1 )\n"
      "0 0 99 25.0 1.5 10.0 7 7 E_RT\n";
  try {
    parse_brite_text(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("99") != std::string::npos);
    CHECK(e.line_number() == 6);
  }
}

TEST_CASE("declared node count must match the records") {
  std::string text =
      "Nodes: ( 0 )\n"
      "0 0 0 1 1 7 RT_NODE\n"
      "1 0 0 1 1 7 RT_NODE\n"
      "\n"
      "Edges: ( 0 )\n";
  CHECK_THROWS_WITH_AS(parse_brite_text(text), doctest::Contains("declares 0"), ParseError);
}

TEST_CASE("declared edge count must match the records") {
  std::string text =
      "Nodes: ( 1 )\n"
      "0 0 0 0 0 7 RT_NODE\n"
      "\n"
      "Edges: ( 3 )\n";
  CHECK_THROWS_WITH_AS(parse_brite_text(text), doctest::Contains("declares 3"), ParseError);
}

TEST_CASE("missing section headers are rejected") {
  CHECK_THROWS_WITH_AS(parse_brite_text("Topology: ( 0 Nodes, 0 Edges )\n"),
                       doctest::Contains("Nodes"), ParseError);
  CHECK_THROWS_WITH_AS(parse_brite_text("Nodes: ( 1 )\n0 0 0 1 1 7 RT_NODE\n"),
                       doctest::Contains("Edges"), ParseError);
}

TEST_CASE("malformed records report the line and field") {
  std::string short_node =
      "Nodes: ( 1 )\n"
      "0 0 0 1 1\n"
      "\n"
      "Edges: ( 0 )\n";
  try {
    parse_brite_text(short_node);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number() == 2);
  }

  std::string bad_delay =
      "Nodes: ( 2 )\n"
      "0 0 0 1 1 7 RT_NODE\n"
      "1 0 0 1 1 7 RT_NODE\n"
      "\n"
      "Edges: ( 1 )\n"
      "0 0 1 25.0 oops 10.0 7 7 E_RT\n";
  CHECK_THROWS_WITH_AS(parse_brite_text(bad_delay), doctest::Contains("delay"), ParseError);
}

TEST_CASE("edge sections tolerate a directedness column and negative bandwidth clamps") {
  std::string text =
      "Nodes: ( 2 )\n"
      "0 0 0 1 1 3 RT_NODE\n"
      "1 0 0 1 1 3 RT_NODE\n"
      "\n"
      "Edges: ( 1 )\n"
      "0 0 1 25.0 2.0 -1.0 3 3 E_RT U\n";
  Topology topo = parse_brite_text(text);
  const Link* link = topo.find_link(0, 1);
  CHECK(link->bandwidth_mbps == kBandwidthFloorMbps);
  CHECK(topo.warnings().size() == 1);
}
