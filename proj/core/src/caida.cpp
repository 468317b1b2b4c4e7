#include "fogtopo/caida.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fogtopo/error.hpp"

namespace fogtopo {

namespace {

constexpr double kEarthRadiusKm = 6371.0;
constexpr double kFiberSpeedKmPerMs = 200.0;  // 200,000 km/s
constexpr double kGeoLatencyFloorMs = 0.1;

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool skip_line(const std::string& line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

// Parses "N123" or "N123:" or "N123:addr", returning 123.
RouterId parse_node_ref(const std::string& tok, std::size_t line_no) {
  if (tok.size() < 2 || tok[0] != 'N') {
    throw ParseError("malformed node reference: " + tok, line_no);
  }
  std::size_t end = tok.find(':');
  std::string digits = tok.substr(1, end == std::string::npos ? std::string::npos : end - 1);
  RouterId id{};
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), id);
  if (res.ec != std::errc() || res.ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("malformed node reference: " + tok, line_no);
  }
  return id;
}

struct Coordinates {
  double lat, lon;
};

}  // namespace

double geo_latency_ms(double lat_a, double lon_a, double lat_b, double lon_b) {
  constexpr double kDegree = 0.017453292519943295;  // pi / 180
  double phi_a = lat_a * kDegree;
  double phi_b = lat_b * kDegree;
  double d_phi = (lat_b - lat_a) * kDegree;
  double d_lambda = (lon_b - lon_a) * kDegree;
  double h = std::sin(d_phi / 2) * std::sin(d_phi / 2) +
             std::cos(phi_a) * std::cos(phi_b) * std::sin(d_lambda / 2) * std::sin(d_lambda / 2);
  double distance_km = 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
  return std::max(kGeoLatencyFloorMs, distance_km / kFiberSpeedKmPerMs);
}

Topology parse_caida_streams(std::istream& nodes, std::istream& links, std::istream& as_records,
                             std::istream* geo, double default_latency_ms,
                             double default_bandwidth_mbps) {
  // AS assignments join against node ids, so gather them first.
  std::unordered_map<RouterId, std::int64_t> as_of;
  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(as_records, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      auto tokens = split_ws(line);
      if (tokens.size() < 3 || tokens[0] != "node.AS") {
        throw ParseError("expected 'node.AS N<id> <as>' record", line_no);
      }
      RouterId id = parse_node_ref(tokens[1], line_no);
      std::int64_t as_id{};
      auto res = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), as_id);
      if (res.ec != std::errc()) {
        throw ParseError("malformed AS number: " + tokens[2], line_no);
      }
      as_of[id] = as_id;
    }
  }

  std::unordered_map<RouterId, Coordinates> coords;
  if (geo != nullptr) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*geo, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      auto tokens = split_ws(line);
      if (tokens.size() < 2 || tokens[0] != "node.geo") {
        throw ParseError("expected 'node.geo N<id>: ...' record", line_no);
      }
      RouterId id = parse_node_ref(tokens[1], line_no);
      // Payload after the node token is tab-separated:
      // continent, country, region, city, latitude, longitude, ...
      std::size_t payload_at = line.find(tokens[1]) + tokens[1].size();
      std::string payload = line.substr(payload_at);
      std::vector<std::string> fields;
      if (payload.find('\t') != std::string::npos) {
        std::istringstream in(payload);
        std::string field;
        while (std::getline(in, field, '\t')) fields.push_back(field);
        if (!fields.empty() && fields.front().empty()) fields.erase(fields.begin());
      } else {
        fields = split_ws(payload);
      }
      if (fields.size() < 6) {
        throw ParseError("geo record has fewer than 6 fields", line_no);
      }
      try {
        coords[id] = {std::stod(fields[4]), std::stod(fields[5])};
      } catch (const std::exception&) {
        throw ParseError("malformed coordinates: " + fields[4] + " " + fields[5], line_no);
      }
    }
  }

  Topology topo;
  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(nodes, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      auto tokens = split_ws(line);
      if (tokens.size() < 2 || tokens[0] != "node") {
        throw ParseError("expected 'node N<id>: <addresses...>' record", line_no);
      }
      RouterId id = parse_node_ref(tokens[1], line_no);
      auto as_it = as_of.find(id);
      topo.add_router(id, as_it == as_of.end() ? kOrphanAs : as_it->second);
    }
  }

  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(links, line)) {
      ++line_no;
      if (skip_line(line)) continue;
      auto tokens = split_ws(line);
      if (tokens.size() < 2 || tokens[0] != "link") {
        throw ParseError("expected 'link L<id>: N<a> N<b> ...' record", line_no);
      }
      std::string link_id = tokens[1];
      if (!link_id.empty() && link_id.back() == ':') link_id.pop_back();
      if (tokens.size() < 4) {
        throw ParseError("link " + link_id + " lists fewer than two nodes", line_no);
      }
      std::vector<RouterId> members;
      members.reserve(tokens.size() - 2);
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        RouterId id = parse_node_ref(tokens[i], line_no);
        if (!topo.has_router(id)) {
          throw ParseError("link " + link_id + " references undeclared node N" +
                               std::to_string(id),
                           line_no);
        }
        members.push_back(id);
      }
      // Star expansion on the first listed node.
      RouterId hub = members.front();
      for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i] == hub) continue;  // same router listed twice
        double latency = default_latency_ms;
        if (geo != nullptr) {
          auto ca = coords.find(hub);
          auto cb = coords.find(members[i]);
          if (ca != coords.end() && cb != coords.end()) {
            latency = geo_latency_ms(ca->second.lat, ca->second.lon, cb->second.lat,
                                     cb->second.lon);
          }
        }
        topo.add_link({hub, members[i], latency, default_bandwidth_mbps});
      }
    }
  }

  return topo;
}

Topology parse_caida(const CaidaDatasetPaths& paths, double default_latency_ms,
                     double default_bandwidth_mbps) {
  std::ifstream nodes(paths.nodes_file);
  if (!nodes) throw Error("cannot open CAIDA nodes file: " + paths.nodes_file.string());
  std::ifstream links(paths.links_file);
  if (!links) throw Error("cannot open CAIDA links file: " + paths.links_file.string());
  std::ifstream as_records(paths.as_file);
  if (!as_records) throw Error("cannot open CAIDA AS file: " + paths.as_file.string());
  std::ifstream geo;
  if (paths.geo_file) {
    geo.open(*paths.geo_file);
    if (!geo) throw Error("cannot open CAIDA geo file: " + paths.geo_file->string());
  }
  return parse_caida_streams(nodes, links, as_records, paths.geo_file ? &geo : nullptr,
                             default_latency_ms, default_bandwidth_mbps);
}

}  // namespace fogtopo
