#include "fogtopo/deployment.hpp"

#include <algorithm>

#include "canonical.hpp"
#include "fogtopo/error.hpp"
#include "fogtopo/version.hpp"

namespace fogtopo {

using detail::append_json_string;
using detail::format_number;

namespace {

// Fog hosts hang off their router's switch; the local link carries the best
// bandwidth the router sees (or this default on an isolated router).
constexpr double kHostLinkLatencyMs = 0.001;
constexpr double kIsolatedHostBandwidthMbps = 1000.0;

double best_incident_bandwidth(const Topology& topology, RouterId router) {
  double best = 0.0;
  std::size_t idx = topology.index_of(router);
  for (const Topology::Neighbor& nb : topology.neighbors_at(idx)) {
    best = std::max(best, topology.links()[nb.link].bandwidth_mbps);
  }
  return best > 0.0 ? best : kIsolatedHostBandwidthMbps;
}

}  // namespace

std::string export_deployment(const Topology& topology,
                              const RouterClassification& classification,
                              const Placement& placement, const FogConfig& config,
                              const std::string& provenance) {
  for (const auto& [router, groups] : placement.assignments) {
    if (!topology.has_router(router)) {
      throw Error("placement references router " + std::to_string(router) +
                  " absent from the topology");
    }
  }
  std::vector<RouterId> uncovered;
  for (RouterId edge : classification.edge) {
    if (!placement.covered_by.count(edge)) uncovered.push_back(edge);
  }
  if (!uncovered.empty()) {
    std::string msg = "placement is incomplete; uncovered edge routers:";
    for (RouterId id : uncovered) msg += " " + std::to_string(id);
    throw Error(msg);
  }

  std::vector<RouterId> routers = topology.sorted_router_ids();

  struct OrderedLink {
    RouterId a, b;
    double latency, bandwidth;
  };
  std::vector<OrderedLink> links;
  links.reserve(topology.link_count());
  for (const Link& l : topology.links()) {
    links.push_back({std::min(l.a, l.b), std::max(l.a, l.b), l.latency_ms, l.bandwidth_mbps});
  }
  std::sort(links.begin(), links.end(), [](const OrderedLink& x, const OrderedLink& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  std::string out;
  out += "{\n";
  out += "  \"schema_version\": " + std::to_string(kDeploymentSchemaVersion) + ",\n";

  out += "  \"metadata\": {\n";
  out += "    \"provenance\": ";
  append_json_string(out, provenance);
  out += ",\n    \"config_digest\": ";
  append_json_string(out, fog_config_digest(config));
  out += ",\n    \"tool_version\": ";
  append_json_string(out, std::string(kToolVersion));
  out += "\n  },\n";

  out += "  \"clients_per_edge\": " + format_number(config.edge_occupancy) + ",\n";

  out += "  \"switches\": [";
  for (std::size_t i = 0; i < routers.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"id\": " + std::to_string(routers[i]) +
           ", \"as\": " + std::to_string(topology.as_of(routers[i])) + "}";
  }
  out += routers.empty() ? "],\n" : "\n  ],\n";

  out += "  \"links\": [";
  for (std::size_t i = 0; i < links.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"a\": " + std::to_string(links[i].a) + ", \"b\": " + std::to_string(links[i].b) +
           ", \"latency_ms\": " + format_number(links[i].latency) +
           ", \"bandwidth_mbps\": " + format_number(links[i].bandwidth) + "}";
  }
  out += links.empty() ? "],\n" : "\n  ],\n";

  out += "  \"fog_hosts\": [";
  std::size_t host_no = 0;
  for (const auto& [router, groups] : placement.assignments) {
    double host_bandwidth = best_incident_bandwidth(topology, router);
    for (const NodeGroup& g : groups) {
      for (int instance = 0; instance < g.count; ++instance) {
        out += host_no == 0 ? "\n" : ",\n";
        out += "    {\"id\": ";
        append_json_string(out, "fog" + std::to_string(host_no));
        out += ", \"router\": " + std::to_string(router);
        out += ", \"type\": ";
        append_json_string(out, g.type.name);
        out += ", \"image\": ";
        append_json_string(out, g.type.image);
        if (g.type.memory_mb) out += ", \"memory_mb\": " + std::to_string(*g.type.memory_mb);
        if (g.type.cpu_share) out += ", \"cpu_share\": " + format_number(*g.type.cpu_share);
        out += ", \"link\": {\"latency_ms\": " + format_number(kHostLinkLatencyMs) +
               ", \"bandwidth_mbps\": " + format_number(host_bandwidth) + "}}";
        ++host_no;
      }
    }
  }
  out += host_no == 0 ? "]\n" : "\n  ]\n";

  out += "}\n";
  return out;
}

}  // namespace fogtopo
