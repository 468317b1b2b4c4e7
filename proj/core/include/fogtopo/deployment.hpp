#pragma once

#include <string>

#include "fogtopo/placement.hpp"
#include "fogtopo/topology.hpp"

namespace fogtopo {

inline constexpr int kDeploymentSchemaVersion = 1;

/// Renders the emulator-agnostic deployment descriptor: one switch per
/// router, the links verbatim, and one fog host per placed node instance,
/// each attached to its router's switch over a near-zero local link.
///
/// Requires a complete placement (every edge router covered); an incomplete
/// one is rejected listing the uncovered edge routers. `provenance` records
/// where the topology came from and lands in the metadata block.
std::string export_deployment(const Topology& topology,
                              const RouterClassification& classification,
                              const Placement& placement, const FogConfig& config,
                              const std::string& provenance = {});

}  // namespace fogtopo
