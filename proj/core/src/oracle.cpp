#include <algorithm>
#include <array>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "modroute/baselines.hpp"

namespace modroute {

namespace {

class JointSearch {
 public:
  JointSearch(const Mission& mission, std::size_t horizon, double wait_cost)
      : graph_(mission.g()), horizon_(horizon), wait_cost_(wait_cost), agents_(mission.starts.size()) {
    target_bit_.assign(graph_.node_count(), 0);
    for (std::size_t i = 0; i < mission.targets.size(); ++i) {
      target_bit_[mission.targets[i]] = 1u << i;
    }
    full_mask_ = (1u << mission.targets.size()) - 1;
    histories_.resize(agents_);
    for (std::size_t a = 0; a < agents_; ++a) histories_[a].push_back(mission.starts[a]);
  }

  OracleResult run() {
    std::uint32_t mask = 0;
    for (const auto& h : histories_) mask |= target_bit_[h.front()];
    dfs(0, mask, 0.0);
    result_.optimal_cost = best_;
    return std::move(result_);
  }

 private:
  std::uint64_t state_key(std::uint32_t mask) const {
    std::uint64_t key = mask;
    for (const auto& h : histories_) key = (key << 4) | h.back();
    return key;
  }

  // True when an earlier-or-equal time reached this state at no greater cost.
  bool dominated(std::uint32_t mask, std::size_t t, double cost) {
    auto& slots = memo_[state_key(mask)];
    if (slots.empty()) slots.assign(horizon_ + 1, kInfinity);
    for (std::size_t s = 0; s <= t; ++s) {
      if (slots[s] <= cost) return true;
    }
    slots[t] = cost;
    return false;
  }

  void dfs(std::size_t t, std::uint32_t mask, double cost) {
    if (mask == full_mask_) {
      if (cost < best_) {
        best_ = cost;
        result_.witness = histories_;
      }
      return;
    }
    if (t == horizon_ || cost >= best_) return;
    if (dominated(mask, t, cost)) return;
    ++result_.explored_states;
    choose(0, t, mask, cost);
  }

  // Picks a move for agent `a`, then recurses into the next agent; after the
  // last agent the step is charged and time advances.
  void choose(std::size_t a, std::size_t t, std::uint32_t mask, double cost) {
    if (a == agents_) {
      double step_cost = 0.0;
      std::size_t waits = 0;
      moved_.clear();
      for (const auto& h : histories_) {
        const NodeId from = h[h.size() - 2];
        const NodeId to = h.back();
        if (from == to) {
          ++waits;
          continue;
        }
        const auto edge = std::make_pair(from, to);
        if (std::find(moved_.begin(), moved_.end(), edge) != moved_.end()) continue;
        moved_.push_back(edge);
        step_cost += *graph_.edge_weight(from, to);
      }
      step_cost += wait_cost_ * static_cast<double>(waits);
      std::uint32_t next_mask = mask;
      for (const auto& h : histories_) next_mask |= target_bit_[h.back()];
      // moved_ is scratch; dfs below may clobber it.
      dfs(t + 1, next_mask, cost + step_cost);
      return;
    }
    auto& history = histories_[a];
    const NodeId here = history.back();
    history.push_back(here);
    choose(a + 1, t, mask, cost);
    history.pop_back();
    for (const Edge& e : graph_.out_edges(here)) {
      history.push_back(e.dst);
      choose(a + 1, t, mask, cost);
      history.pop_back();
    }
  }

  const Graph& graph_;
  std::size_t horizon_;
  double wait_cost_;
  std::size_t agents_;
  std::vector<std::uint32_t> target_bit_;
  std::uint32_t full_mask_ = 0;
  std::vector<std::vector<NodeId>> histories_;
  std::vector<std::pair<NodeId, NodeId>> moved_;
  std::unordered_map<std::uint64_t, std::vector<double>> memo_;
  double best_ = kInfinity;
  OracleResult result_;
};

}  // namespace

OracleResult brute_force_optimal(const Mission& mission, std::size_t horizon, double wait_cost,
                                 const OracleLimits& limits) {
  if (auto problems = validate(mission); !problems.empty()) {
    throw InputError("invalid mission: " + fmt::format("{}", fmt::join(problems, "; ")));
  }
  const std::size_t n = mission.starts.size();
  const std::size_t m = mission.g().node_count();
  if (n > limits.max_agents || m > limits.max_nodes || horizon > limits.max_horizon) {
    throw InputError(fmt::format(
        "oracle limits exceeded: {} agents (max {}), {} nodes (max {}), horizon {} (max {})", n,
        limits.max_agents, m, limits.max_nodes, horizon, limits.max_horizon));
  }
  // State keys pack 4 bits per agent position and one bit per target.
  if (m > 16 || n > 8 || mission.targets.size() > 24) {
    throw InputError("oracle state encoding supports at most 16 nodes, 8 agents and 24 targets");
  }
  if (!(wait_cost >= 0.0)) throw InputError("wait cost must be non-negative");
  return JointSearch(mission, horizon, wait_cost).run();
}

}  // namespace modroute
