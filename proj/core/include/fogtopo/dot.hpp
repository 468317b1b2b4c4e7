#pragma once

#include <string>

#include "fogtopo/placement.hpp"
#include "fogtopo/topology.hpp"

namespace fogtopo {

/// Graphviz rendering of the (optionally enhanced) topology. Edge routers are
/// filled circles, backbone routers filled boxes, and fog-hosting routers
/// white double circles; links are labelled with their latency. Nodes and
/// edges are emitted in sorted order, so output is byte-stable.
std::string export_dot(const Topology& topology,
                       const RouterClassification* classification = nullptr,
                       const Placement* placement = nullptr);

}  // namespace fogtopo
