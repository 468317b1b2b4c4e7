#include "fogtopo/brite.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "fogtopo/error.hpp"

namespace fogtopo {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::uint64_t parse_u64(const std::string& tok, const char* field, std::size_t line_no) {
  std::uint64_t value{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("field '") + field + "' is not a non-negative integer: " + tok,
                     line_no);
  }
  return value;
}

std::int64_t parse_i64(const std::string& tok, const char* field, std::size_t line_no) {
  std::int64_t value{};
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("field '") + field + "' is not an integer: " + tok, line_no);
  }
  return value;
}

double parse_real(const std::string& tok, const char* field, std::size_t line_no) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(tok, &consumed);
    if (consumed != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("field '") + field + "' is not a number: " + tok, line_no);
  }
}

// Extracts N from a section header of the form "Nodes: ( N )".
std::optional<std::size_t> section_count(const std::string& line, const char* name,
                                         std::size_t line_no) {
  auto tokens = split_ws(line);
  if (tokens.empty() || tokens[0] != std::string(name) + ":") return std::nullopt;
  std::size_t open = line.find('(');
  std::size_t close = line.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw ParseError(std::string(name) + " section header lacks a '( count )'", line_no);
  }
  std::string inner = line.substr(open + 1, close - open - 1);
  auto inner_tokens = split_ws(inner);
  if (inner_tokens.size() != 1) {
    throw ParseError(std::string(name) + " section header count is malformed", line_no);
  }
  return static_cast<std::size_t>(parse_u64(inner_tokens[0], "count", line_no));
}

struct Line {
  std::string text;
  std::size_t number;
};

}  // namespace

Topology parse_brite(std::istream& in) {
  std::vector<Line> lines;
  {
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      lines.push_back({raw, ++no});
    }
  }

  std::size_t pos = 0;
  std::optional<std::size_t> node_count;
  while (pos < lines.size()) {
    node_count = section_count(lines[pos].text, "Nodes", lines[pos].number);
    ++pos;
    if (node_count) break;
  }
  if (!node_count) throw ParseError("missing 'Nodes: ( N )' section header");

  Topology topo;
  std::size_t nodes_seen = 0;
  std::size_t nodes_header_line = pos > 0 ? lines[pos - 1].number : 0;
  while (pos < lines.size() && !is_blank(lines[pos].text)) {
    if (section_count(lines[pos].text, "Edges", lines[pos].number)) break;
    auto tokens = split_ws(lines[pos].text);
    if (tokens.size() < 7) {
      throw ParseError("node record has " + std::to_string(tokens.size()) +
                           " fields, expected at least 7 (id x y in_degree out_degree as_id type)",
                       lines[pos].number);
    }
    RouterId id = parse_u64(tokens[0], "id", lines[pos].number);
    std::int64_t as_id = parse_i64(tokens[5], "as_id", lines[pos].number);
    if (topo.has_router(id)) {
      throw ParseError("duplicate node id " + std::to_string(id), lines[pos].number);
    }
    topo.add_router(id, as_id);
    ++nodes_seen;
    ++pos;
  }
  if (nodes_seen != *node_count) {
    throw ParseError("Nodes section declares " + std::to_string(*node_count) +
                         " records but contains " + std::to_string(nodes_seen),
                     nodes_header_line);
  }

  std::optional<std::size_t> edge_count;
  while (pos < lines.size()) {
    edge_count = section_count(lines[pos].text, "Edges", lines[pos].number);
    ++pos;
    if (edge_count) break;
  }
  if (!edge_count) throw ParseError("missing 'Edges: ( M )' section header");

  std::size_t edges_seen = 0;
  std::size_t edges_header_line = pos > 0 ? lines[pos - 1].number : 0;
  while (pos < lines.size() && !is_blank(lines[pos].text)) {
    auto tokens = split_ws(lines[pos].text);
    if (tokens.size() < 9) {
      throw ParseError(
          "edge record has " + std::to_string(tokens.size()) +
              " fields, expected at least 9 (id from to length delay bandwidth as_from as_to type)",
          lines[pos].number);
    }
    RouterId from = parse_u64(tokens[1], "from", lines[pos].number);
    RouterId to = parse_u64(tokens[2], "to", lines[pos].number);
    double delay = parse_real(tokens[4], "delay", lines[pos].number);
    double bandwidth = parse_real(tokens[5], "bandwidth", lines[pos].number);
    if (!topo.has_router(from)) {
      throw ParseError("edge references unknown node " + std::to_string(from), lines[pos].number);
    }
    if (!topo.has_router(to)) {
      throw ParseError("edge references unknown node " + std::to_string(to), lines[pos].number);
    }
    if (from == to) {
      throw ParseError("edge is a self-loop at node " + std::to_string(from), lines[pos].number);
    }
    topo.add_link({from, to, delay, bandwidth});
    ++edges_seen;
    ++pos;
  }
  if (edges_seen != *edge_count) {
    throw ParseError("Edges section declares " + std::to_string(*edge_count) +
                         " records but contains " + std::to_string(edges_seen),
                     edges_header_line);
  }

  return topo;
}

Topology parse_brite_text(const std::string& text) {
  std::istringstream in(text);
  return parse_brite(in);
}

Topology load_brite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open BRITE file: " + path.string());
  return parse_brite(in);
}

}  // namespace fogtopo
