#include <cmath>

#include "modroute/routing.hpp"

namespace modroute {

std::vector<std::optional<NodeId>> assign_targets(const Graph& graph, std::span<const AgentState> agents,
                                                  std::span<const NodeId> unvisited) {
  std::vector<std::optional<NodeId>> out(agents.size());
  if (unvisited.empty()) return out;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    if (agents[a].finished) continue;
    const auto tree = dijkstra(graph, agents[a].position);
    double best = kInfinity;
    for (NodeId target : unvisited) {
      const double d = tree.distance.at(target);
      if (d < best || (d == best && std::isfinite(d) && target < *out[a])) {
        best = d;
        out[a] = target;
      }
    }
  }
  return out;
}

}  // namespace modroute
