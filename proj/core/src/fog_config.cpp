#include "fogtopo/fog_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "canonical.hpp"
#include "fogtopo/error.hpp"

namespace fogtopo {

using nlohmann::json;

void validate(const FogConfig& config) {
  if (config.node_types.empty()) {
    throw Error("fog config: node_types must not be empty");
  }
  std::set<std::string> names;
  for (const FogNodeType& t : config.node_types) {
    if (t.name.empty()) throw Error("fog config: node type name must not be empty");
    if (!names.insert(t.name).second) {
      throw Error("fog config: duplicate node type name '" + t.name + "'");
    }
    if (t.max_clients < 1) {
      throw Error("fog config: node type '" + t.name + "' max_clients must be at least 1");
    }
    if (t.cost <= 0.0) {
      throw Error("fog config: node type '" + t.name + "' cost must be positive");
    }
    if (t.memory_mb && *t.memory_mb <= 0) {
      throw Error("fog config: node type '" + t.name + "' memory_mb must be positive");
    }
    if (t.cpu_share && *t.cpu_share <= 0.0) {
      throw Error("fog config: node type '" + t.name + "' cpu_share must be positive");
    }
  }
  if (config.edge_occupancy <= 0.0) {
    throw Error("fog config: edge_occupancy must be positive");
  }
  if (config.latency_threshold_ms <= 0.0) {
    throw Error("fog config: latency_threshold_ms must be positive");
  }
}

FogConfig parse_fog_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("fog config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("fog config must be a JSON object");

  FogConfig config;
  try {
    config.latency_threshold_ms = doc.at("latency_threshold_ms").get<double>();
    config.edge_occupancy = doc.at("edge_occupancy").get<double>();
    if (doc.contains("max_total_nodes") && !doc["max_total_nodes"].is_null()) {
      config.max_total_nodes = doc["max_total_nodes"].get<std::uint64_t>();
    }
    for (const json& t : doc.at("node_types")) {
      FogNodeType type;
      type.name = t.at("name").get<std::string>();
      type.max_clients = t.at("max_clients").get<int>();
      type.cost = t.at("cost").get<double>();
      type.image = t.value("image", std::string{});
      if (t.contains("memory_mb") && !t["memory_mb"].is_null()) {
        type.memory_mb = t["memory_mb"].get<int>();
      }
      if (t.contains("cpu_share") && !t["cpu_share"].is_null()) {
        type.cpu_share = t["cpu_share"].get<double>();
      }
      config.node_types.push_back(std::move(type));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("fog config: ") + e.what());
  }
  validate(config);
  return config;
}

FogConfig load_fog_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fog config: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_fog_config(text.str());
}

std::string canonical_fog_config(const FogConfig& config) {
  using detail::append_json_string;
  using detail::format_number;

  std::vector<FogNodeType> types = config.node_types;
  std::sort(types.begin(), types.end(),
            [](const FogNodeType& a, const FogNodeType& b) { return a.name < b.name; });

  std::string out = "{\n";
  out += "  \"latency_threshold_ms\": " + format_number(config.latency_threshold_ms) + ",\n";
  out += "  \"edge_occupancy\": " + format_number(config.edge_occupancy) + ",\n";
  if (config.max_total_nodes) {
    out += "  \"max_total_nodes\": " + std::to_string(*config.max_total_nodes) + ",\n";
  }
  out += "  \"node_types\": [\n";
  for (std::size_t i = 0; i < types.size(); ++i) {
    const FogNodeType& t = types[i];
    out += "    {\"name\": ";
    append_json_string(out, t.name);
    out += ", \"max_clients\": " + std::to_string(t.max_clients);
    out += ", \"cost\": " + format_number(t.cost);
    out += ", \"image\": ";
    append_json_string(out, t.image);
    if (t.memory_mb) out += ", \"memory_mb\": " + std::to_string(*t.memory_mb);
    if (t.cpu_share) out += ", \"cpu_share\": " + format_number(*t.cpu_share);
    out += i + 1 < types.size() ? "},\n" : "}\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string fog_config_digest(const FogConfig& config) {
  return detail::fnv1a_hex(canonical_fog_config(config));
}

}  // namespace fogtopo
