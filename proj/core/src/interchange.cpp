#include "fogtopo/interchange.hpp"

#include <algorithm>

#include <json.hpp>

#include "canonical.hpp"
#include "fogtopo/error.hpp"

namespace fogtopo {

using nlohmann::json;
using detail::append_json_string;
using detail::format_number;

namespace {

void require_router(const Topology& topology, RouterId id, const char* where) {
  if (!topology.has_router(id)) {
    throw Error(std::string(where) + " references router " + std::to_string(id) +
                " absent from the topology");
  }
}

void append_node_group(std::string& out, const NodeGroup& g) {
  out += "{\"type\": ";
  append_json_string(out, g.type.name);
  out += ", \"max_clients\": " + std::to_string(g.type.max_clients);
  out += ", \"cost\": " + format_number(g.type.cost);
  out += ", \"image\": ";
  append_json_string(out, g.type.image);
  if (g.type.memory_mb) out += ", \"memory_mb\": " + std::to_string(*g.type.memory_mb);
  if (g.type.cpu_share) out += ", \"cpu_share\": " + format_number(*g.type.cpu_share);
  out += ", \"count\": " + std::to_string(g.count);
  out += "}";
}

}  // namespace

std::string export_interchange(const Topology& topology,
                               const RouterClassification* classification,
                               const Placement* placement) {
  if (classification) {
    for (RouterId id : classification->backbone) require_router(topology, id, "classification");
    for (RouterId id : classification->edge) require_router(topology, id, "classification");
    if (classification->backbone.size() + classification->edge.size() !=
        topology.router_count()) {
      throw Error("classification does not partition the router set");
    }
  }
  if (placement) {
    for (const auto& [router, groups] : placement->assignments) {
      require_router(topology, router, "placement assignment");
    }
    for (const auto& [edge, fog] : placement->covered_by) {
      require_router(topology, edge, "placement coverage");
      require_router(topology, fog, "placement coverage");
    }
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
  out += "  \"schema_version\": " + std::to_string(kInterchangeSchemaVersion) + ",\n";

  out += "  \"routers\": [";
  for (std::size_t i = 0; i < routers.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"id\": " + std::to_string(routers[i]) +
           ", \"as\": " + std::to_string(topology.as_of(routers[i]));
    if (classification) {
      out += ", \"role\": ";
      append_json_string(out, classification->is_backbone(routers[i]) ? "backbone" : "edge");
    }
    out += "}";
  }
  out += routers.empty() ? "],\n" : "\n  ],\n";

  out += "  \"links\": [";
  for (std::size_t i = 0; i < links.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"a\": " + std::to_string(links[i].a) + ", \"b\": " + std::to_string(links[i].b) +
           ", \"latency_ms\": " + format_number(links[i].latency) +
           ", \"bandwidth_mbps\": " + format_number(links[i].bandwidth) + "}";
  }
  out += links.empty() ? "]" : "\n  ]";

  if (placement) {
    out += ",\n  \"placement\": {\n";
    out += "    \"total_cost\": " + format_number(placement->total_cost) + ",\n";

    out += "    \"assignments\": [";
    std::size_t i = 0;
    for (const auto& [router, groups] : placement->assignments) {
      out += i++ == 0 ? "\n" : ",\n";
      out += "      {\"router\": " + std::to_string(router) + ", \"nodes\": [";
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g > 0) out += ", ";
        append_node_group(out, groups[g]);
      }
      out += "]}";
    }
    out += placement->assignments.empty() ? "],\n" : "\n    ],\n";

    out += "    \"covered_by\": [";
    i = 0;
    for (const auto& [edge, fog] : placement->covered_by) {
      out += i++ == 0 ? "\n" : ",\n";
      out += "      {\"edge\": " + std::to_string(edge) + ", \"fog\": " + std::to_string(fog) + "}";
    }
    out += placement->covered_by.empty() ? "]\n" : "\n    ]\n";
    out += "  }\n";
  } else {
    out += "\n";
  }

  out += "}\n";
  return out;
}

InterchangeDocument import_interchange(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("interchange document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("interchange document must be a JSON object");

  InterchangeDocument out;
  try {
    int version = doc.at("schema_version").get<int>();
    if (version != kInterchangeSchemaVersion) {
      throw ParseError("unsupported interchange schema_version " + std::to_string(version));
    }

    bool any_role = false;
    RouterClassification classification;
    for (const json& r : doc.at("routers")) {
      RouterId id = r.at("id").get<RouterId>();
      out.topology.add_router(id, r.at("as").get<std::int64_t>());
      if (r.contains("role")) {
        any_role = true;
        std::string role = r["role"].get<std::string>();
        if (role == "backbone") {
          classification.backbone.insert(id);
        } else if (role == "edge") {
          classification.edge.insert(id);
        } else {
          throw ParseError("unknown router role '" + role + "'");
        }
      }
    }
    if (any_role) {
      if (classification.backbone.size() + classification.edge.size() !=
          out.topology.router_count()) {
        throw ParseError("some routers carry a role and some do not");
      }
      out.classification = std::move(classification);
    }

    for (const json& l : doc.at("links")) {
      out.topology.add_link({l.at("a").get<RouterId>(), l.at("b").get<RouterId>(),
                             l.at("latency_ms").get<double>(),
                             l.at("bandwidth_mbps").get<double>()});
    }

    if (doc.contains("placement") && !doc["placement"].is_null()) {
      const json& p = doc["placement"];
      Placement placement;
      placement.total_cost = p.at("total_cost").get<double>();
      for (const json& a : p.at("assignments")) {
        RouterId router = a.at("router").get<RouterId>();
        std::vector<NodeGroup> groups;
        for (const json& n : a.at("nodes")) {
          NodeGroup g;
          g.type.name = n.at("type").get<std::string>();
          g.type.max_clients = n.at("max_clients").get<int>();
          g.type.cost = n.at("cost").get<double>();
          g.type.image = n.value("image", std::string{});
          if (n.contains("memory_mb") && !n["memory_mb"].is_null()) {
            g.type.memory_mb = n["memory_mb"].get<int>();
          }
          if (n.contains("cpu_share") && !n["cpu_share"].is_null()) {
            g.type.cpu_share = n["cpu_share"].get<double>();
          }
          g.count = n.at("count").get<int>();
          groups.push_back(std::move(g));
        }
        placement.assignments.emplace(router, std::move(groups));
      }
      for (const json& c : p.at("covered_by")) {
        placement.covered_by.emplace(c.at("edge").get<RouterId>(), c.at("fog").get<RouterId>());
      }
      out.placement = std::move(placement);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("interchange document: ") + e.what());
  }

  return out;
}

}  // namespace fogtopo
