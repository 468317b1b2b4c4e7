#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fogtopo {

/// One deployable class of fog node: how many clients an instance serves and
/// what placing it costs, plus the container image and resource hints the
/// deployment descriptor forwards.
struct FogNodeType {
  std::string name;
  int max_clients = 1;
  double cost = 0.0;
  std::string image;
  std::optional<int> memory_mb;
  std::optional<double> cpu_share;

  bool operator==(const FogNodeType&) const = default;
};

struct FogConfig {
  std::vector<FogNodeType> node_types;
  double edge_occupancy = 1.0;    // average clients per edge router
  double latency_threshold_ms = 0.0;
  std::optional<std::uint64_t> max_total_nodes;
};

/// Throws Error naming the violated constraint.
void validate(const FogConfig& config);

/// Parses the fog configuration document:
/// {"latency_threshold_ms": .., "edge_occupancy": .., "max_total_nodes"?: ..,
///  "node_types": [{"name", "max_clients", "cost", "image", "memory_mb"?, "cpu_share"?}]}
FogConfig parse_fog_config(const std::string& text);
FogConfig load_fog_config(const std::filesystem::path& path);

/// Canonical serialization (stable key order and number formatting); also the
/// input of config digests embedded in deployment descriptors.
std::string canonical_fog_config(const FogConfig& config);
std::string fog_config_digest(const FogConfig& config);

}  // namespace fogtopo
