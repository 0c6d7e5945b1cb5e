#include "modroute/mission.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "modroute/shortest_paths.hpp"

namespace modroute {

Mission make_mission(std::shared_ptr<const Graph> graph, std::vector<NodeId> starts,
                     std::vector<NodeId> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  return Mission{std::move(graph), std::move(starts), std::move(targets)};
}

std::vector<std::string> validate(const Mission& mission) {
  std::vector<std::string> out;
  if (!mission.graph) {
    out.emplace_back("mission has no graph");
    return out;
  }
  const Graph& g = *mission.graph;
  const auto m = g.node_count();
  if (mission.starts.empty()) out.emplace_back("no agent start nodes");
  if (mission.targets.empty()) out.emplace_back("no target nodes");

  std::vector<NodeId> valid_starts;
  for (std::size_t i = 0; i < mission.starts.size(); ++i) {
    if (mission.starts[i] >= m) {
      out.push_back(fmt::format("start of agent {} is node {}, outside [0, {})", i, mission.starts[i], m));
    } else {
      valid_starts.push_back(mission.starts[i]);
    }
  }

  std::vector<char> reachable(m, 0);
  for (NodeId s : valid_starts) {
    const auto tree = dijkstra(g, s);
    for (std::size_t v = 0; v < m; ++v) {
      if (std::isfinite(tree.distance[v])) reachable[v] = 1;
    }
  }
  for (NodeId t : mission.targets) {
    if (t >= m) {
      out.push_back(fmt::format("target node {} is outside [0, {})", t, m));
    } else if (!valid_starts.empty() && !reachable[t]) {
      out.push_back(fmt::format("target {} (label '{}') is unreachable from every start", t, g.label(t)));
    }
  }
  return out;
}

std::uint64_t mission_hash(const Mission& mission) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(mission.starts.size());
  for (NodeId s : mission.starts) mix(s);
  mix(mission.targets.size());
  for (NodeId t : mission.targets) mix(t);
  return h;
}

}  // namespace modroute
