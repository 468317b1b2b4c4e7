#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "fogtopo/topology.hpp"

namespace fogtopo {

/// Parses a BRITE topology export: a preamble, a `Nodes: ( N )` section with
/// records `id x y in_degree out_degree as_id type`, and an `Edges: ( M )`
/// section with records `id from to length delay bandwidth as_from as_to type`.
/// The edge `delay` field becomes link latency (ms) and `bandwidth` becomes
/// link bandwidth (Mbps); the geometric `length` field is ignored.
///
/// Throws ParseError with the offending line number on malformed records,
/// dangling edge endpoints, count mismatches, or missing section headers.
Topology parse_brite(std::istream& in);
Topology parse_brite_text(const std::string& text);
Topology load_brite(const std::filesystem::path& path);

}  // namespace fogtopo
