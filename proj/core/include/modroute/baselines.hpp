#pragma once

#include <cstddef>
#include <vector>

#include "modroute/mission.hpp"
#include "modroute/routing.hpp"

namespace modroute {

/// Non-modular nearest-neighbor routing. Every step, targets are reassigned
/// with assign_targets and each agent advances one edge along its
/// (lexicographically first) shortest path. Nothing is shared: each agent pays
/// for every edge it traverses, and nobody waits or feels any force.
/// Throws InputError when validate(mission) reports problems.
MissionResult run_nonmodular_baseline(const Mission& mission, const RunOptions& options = {});

struct OracleLimits {
  std::size_t max_agents = 3;
  std::size_t max_nodes = 12;
  std::size_t max_horizon = 12;
};

struct OracleResult {
  /// kInfinity when no joint plan within the horizon covers every target.
  double optimal_cost = kInfinity;
  /// One optimal plan: node occupied by each agent at t = 0..T.
  std::vector<std::vector<NodeId>> witness;
  std::size_t explored_states = 0;

  bool feasible() const { return !witness.empty(); }
};

/// Exact minimum shared-edge cost over all joint plans of at most `horizon`
/// steps, where each agent per step takes an out-edge or waits (at
/// `wait_cost`). Exhaustive depth-first search with incumbent pruning and a
/// memo of (positions, visited targets, t). Throws InputError beyond `limits`
/// or on an invalid mission.
OracleResult brute_force_optimal(const Mission& mission, std::size_t horizon, double wait_cost = 0.0,
                                 const OracleLimits& limits = {});

}  // namespace modroute
