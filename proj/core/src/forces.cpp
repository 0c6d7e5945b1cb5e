#include <cmath>
#include <stdexcept>
#include <string>

#include "modroute/routing.hpp"

namespace modroute {

void ForceParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be a finite non-negative number");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InputError("beta must be a finite non-negative number");
  if (alpha == 0.0 && beta == 0.0) throw InputError("alpha and beta cannot both be zero");
  if (k == 0) throw InputError("k must be at least 1");
}

double attractive_force(double scale, double d) {
  if (!(d > 0.0)) throw std::domain_error("attractive_force needs a positive distance, got " + std::to_string(d));
  return scale / (d * d);
}

const PathSet& PathCache::get(NodeId src, NodeId dst) {
  const std::uint64_t key = (static_cast<std::uint64_t>(src) << 32) | dst;
  auto it = sets_.find(key);
  if (it == sets_.end()) it = sets_.emplace(key, yen_k_shortest(*graph_, src, dst, k_)).first;
  return it->second;
}

EdgeForces compute_edge_forces(const Graph& graph, const AgentState& self, std::span<const AgentState> others,
                               const ForceParams& params, PathCache* cache) {
  EdgeForces forces{self.agent_id, self.position, {}};
  std::map<NodeId, double> per_source;

  auto add_source = [&](NodeId dst, double scale) {
    if (scale == 0.0) return;
    PathSet local;
    const PathSet* set = nullptr;
    if (cache && cache->k() == params.k) {
      set = &cache->get(self.position, dst);
    } else {
      local = yen_k_shortest(graph, self.position, dst, params.k);
      set = &local;
    }
    per_source.clear();
    for (const Path& path : set->paths) {
      if (path.edge_count() == 0) continue;
      const double f = attractive_force(scale, path.total_weight);
      double& slot = per_source[path.nodes[1]];
      slot = params.sum_paths ? slot + f : std::max(slot, f);
    }
    for (const auto& [first_hop, f] : per_source) forces.entries[first_hop] += f;
  };

  if (self.assigned_target) add_source(*self.assigned_target, params.beta);
  for (const AgentState& other : others) {
    if (other.agent_id == self.agent_id || other.finished || other.position == self.position) continue;
    add_source(other.position, params.alpha);
  }
  return forces;
}

MoveIntent select_edge(const EdgeForces& forces) {
  if (forces.entries.empty()) return MoveIntent::wait(forces.agent_id, forces.origin);
  auto best = forces.entries.begin();
  for (auto it = std::next(best); it != forces.entries.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return {forces.agent_id, forces.origin, best->first, false};
}

}  // namespace modroute
