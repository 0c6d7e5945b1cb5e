#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modroute/graph.hpp"

namespace modroute {

/// One problem instance: agents start at fixed nodes and every target must be
/// visited by at least one of them.
struct Mission {
  std::shared_ptr<const Graph> graph;
  std::vector<NodeId> starts;
  std::vector<NodeId> targets;  // kept sorted and unique by make_mission

  const Graph& g() const { return *graph; }
};

/// Builds a mission with a normalized (sorted, deduplicated) target set.
/// Does not validate; see validate().
Mission make_mission(std::shared_ptr<const Graph> graph, std::vector<NodeId> starts,
                     std::vector<NodeId> targets);

/// Human-readable problems with `mission`; empty when it is well-formed:
/// a graph is present, starts and targets are non-empty and in range, and
/// every target is reachable from at least one start.
std::vector<std::string> validate(const Mission& mission);

/// Stable FNV-1a digest of the starts and targets, for logging which mission
/// a result row came from.
std::uint64_t mission_hash(const Mission& mission);

}  // namespace modroute
