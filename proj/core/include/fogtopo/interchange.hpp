#pragma once

#include <optional>
#include <string>

#include "fogtopo/placement.hpp"
#include "fogtopo/topology.hpp"

namespace fogtopo {

inline constexpr int kInterchangeSchemaVersion = 1;

struct InterchangeDocument {
  Topology topology;
  std::optional<RouterClassification> classification;
  std::optional<Placement> placement;
};

/// Canonical serialization of a topology plus optional classification and
/// placement: fixed key order, shortest round-trip number formatting, routers
/// and links sorted, one trailing newline. Byte-stable for identical inputs.
/// Throws Error naming any router referenced but absent from the topology.
std::string export_interchange(const Topology& topology,
                               const RouterClassification* classification = nullptr,
                               const Placement* placement = nullptr);

/// Inverse of export_interchange. Throws ParseError on malformed documents.
InterchangeDocument import_interchange(const std::string& text);

}  // namespace fogtopo
