#include "fogtopo/dot.hpp"

#include <algorithm>

#include "canonical.hpp"

namespace fogtopo {

using detail::format_number;

std::string export_dot(const Topology& topology, const RouterClassification* classification,
                       const Placement* placement) {
  std::string out = "graph fogtopo {\n";
  out += "  node [fontsize=10];\n";

  for (RouterId id : topology.sorted_router_ids()) {
    std::string name = "r" + std::to_string(id);
    if (placement && placement->assignments.count(id)) {
      out += "  " + name + " [shape=doublecircle, style=filled, fillcolor=white];\n";
    } else if (classification && classification->is_backbone(id)) {
      out += "  " + name + " [shape=box, style=filled, fillcolor=gray40];\n";
    } else if (classification) {
      out += "  " + name + " [shape=circle, style=filled, fillcolor=gray70];\n";
    } else {
      out += "  " + name + " [shape=circle];\n";
    }
  }

  struct OrderedLink {
    RouterId a, b;
    double latency;
  };
  std::vector<OrderedLink> links;
  links.reserve(topology.link_count());
  for (const Link& l : topology.links()) {
    links.push_back({std::min(l.a, l.b), std::max(l.a, l.b), l.latency_ms});
  }
  std::sort(links.begin(), links.end(), [](const OrderedLink& x, const OrderedLink& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (const OrderedLink& l : links) {
    out += "  r" + std::to_string(l.a) + " -- r" + std::to_string(l.b) + " [label=\"" +
           format_number(l.latency) + "\"];\n";
  }

  out += "}\n";
  return out;
}

}  // namespace fogtopo
