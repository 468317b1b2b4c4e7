#pragma once

#include <filesystem>
#include <istream>
#include <optional>

#include "fogtopo/topology.hpp"

namespace fogtopo {

struct CaidaDatasetPaths {
  std::filesystem::path nodes_file;
  std::filesystem::path links_file;
  std::filesystem::path as_file;
  std::optional<std::filesystem::path> geo_file;
};

/// Assembles a topology from ITDK-style text files.
///
/// Node records (`node N<id>: <addresses...>`) become routers; `node.AS`
/// records assign ASs (routers without one land in the orphan AS); link
/// records listing k nodes expand to a star of k-1 links rooted at the first
/// node. Links carry default_latency_ms / default_bandwidth_mbps unless a geo
/// file is given, in which case latency is derived from the great-circle
/// distance between endpoint coordinates at 200,000 km/s, floored at 0.1 ms.
Topology parse_caida(const CaidaDatasetPaths& paths, double default_latency_ms = 1.0,
                     double default_bandwidth_mbps = 1000.0);

/// Stream-based variant; geo may be null.
Topology parse_caida_streams(std::istream& nodes, std::istream& links, std::istream& as_records,
                             std::istream* geo, double default_latency_ms = 1.0,
                             double default_bandwidth_mbps = 1000.0);

/// Latency (ms) of a great-circle path between two coordinates at the
/// approximate speed of light in fiber, floored at 0.1 ms.
double geo_latency_ms(double lat_a, double lon_a, double lat_b, double lon_b);

}  // namespace fogtopo
