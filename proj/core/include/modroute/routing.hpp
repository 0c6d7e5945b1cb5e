#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "modroute/graph.hpp"
#include "modroute/mission.hpp"
#include "modroute/random.hpp"
#include "modroute/shortest_paths.hpp"

namespace modroute {

/// One module's state during a mission.
struct AgentState {
  int agent_id = 0;
  NodeId position = 0;
  std::optional<NodeId> assigned_target;
  bool finished = false;
  /// Node occupied at t = 0, 1, ...; the last entry equals `position`.
  std::vector<NodeId> history;

  static AgentState at(int id, NodeId start) { return {id, start, std::nullopt, false, {start}}; }
};

/// Scaling of agent-agent (alpha) and agent-target (beta) attraction, and the
/// number of sampled paths per attraction source.
struct ForceParams {
  double alpha = 0.5;
  double beta = 1.0;
  std::size_t k = 5;
  /// Sum the forces of all sampled paths sharing a first edge instead of
  /// keeping the strongest one.
  bool sum_paths = false;

  /// Throws InputError unless alpha, beta >= 0 (finite), not both zero, k >= 1.
  void validate() const;
};

/// Total attraction on each candidate edge leaving `origin`, keyed by the
/// edge's destination node. Edges that start no sampled path are absent.
struct EdgeForces {
  int agent_id = 0;
  NodeId origin = 0;
  std::map<NodeId, double> entries;
};

struct MoveIntent {
  int agent_id = 0;
  NodeId from = 0;
  NodeId to = 0;
  bool waiting = false;

  static MoveIntent wait(int id, NodeId at) { return {id, at, at, true}; }
  friend bool operator==(const MoveIntent&, const MoveIntent&) = default;
};

struct StepRecord {
  std::size_t t = 0;  // 1-based: the record of the move from t-1 to t
  /// Distinct non-self-loop edges traversed by at least one agent, sorted.
  std::vector<Edge> traversed;
  std::vector<MoveIntent> intents;
  double step_cost = 0.0;
};

/// How step costs were charged.
enum class CostModel {
  /// Each distinct traversed edge is paid once per step, however many agents use it.
  kShared,
  /// Every agent pays every edge it traverses.
  kPerAgent,
};

struct MissionResult {
  std::vector<std::vector<NodeId>> per_agent_paths;
  std::vector<StepRecord> steps;
  double total_cost = 0.0;
  bool completed = false;
  std::size_t steps_taken = 0;
  CostModel cost_model = CostModel::kShared;
  double wait_cost = 0.0;
  /// Why the run stopped early; empty when completed.
  std::string diagnostic;
};

/// Which pairs of moving agents resolve_waits holds back.
enum class WaitPolicy {
  /// Nobody waits.
  kNone,
  /// Only direct position exchanges.
  kSwap,
  /// Any two agents stepping toward each other's current node whose moves do
  /// not bring them closer (they pass each other). Includes every swap.
  kCrossing,
};

struct RunOptions {
  std::uint64_t seed = 0;
  /// Defaults to 4 * m^2 when unset.
  std::optional<std::size_t> max_steps;
  /// Charged per waiting (unfinished) agent per step.
  double wait_cost = 0.0;
  WaitPolicy wait_policy = WaitPolicy::kCrossing;
};

/// Memo of k-shortest path sets over one immutable graph. Not thread-safe;
/// give each mission run its own.
class PathCache {
 public:
  PathCache(const Graph& graph, std::size_t k) : graph_(&graph), k_(k) {}

  const PathSet& get(NodeId src, NodeId dst);
  std::size_t k() const noexcept { return k_; }

 private:
  const Graph* graph_;
  std::size_t k_;
  std::unordered_map<std::uint64_t, PathSet> sets_;
};

/// Nearest-target assignment: every unfinished agent gets the unvisited
/// target of least Dijkstra distance from its position, ties to the smaller
/// target id. Several agents may get the same target. Finished agents and
/// agents with no reachable unvisited target get nullopt. The result is
/// aligned with `agents`.
std::vector<std::optional<NodeId>> assign_targets(const Graph& graph, std::span<const AgentState> agents,
                                                  std::span<const NodeId> unvisited);

/// Inverse-square attraction scale / d^2. Throws std::domain_error for d <= 0.
double attractive_force(double scale, double d);

/// Forces on the candidate edges of `self`: the first edges of the k shortest
/// paths to its assigned target (scale beta) and to every unfinished other
/// agent at a different node (scale alpha). Per source the strongest path per
/// first edge counts (or the sum, with sum_paths); sources then add up.
EdgeForces compute_edge_forces(const Graph& graph, const AgentState& self, std::span<const AgentState> others,
                               const ForceParams& params, PathCache* cache = nullptr);

/// The candidate edge of maximum force; ties go to the smaller destination
/// id. An empty map yields a wait at the origin.
MoveIntent select_edge(const EdgeForces& forces);

/// Holds back one agent of every conflicting pair (see WaitPolicy): the one
/// closer (Dijkstra distance) to its assigned target waits for the other to
/// join; exact ties are settled by one fair draw from `rng`. Pairs are
/// examined once, in intent order, against the intents as already resolved.
std::vector<MoveIntent> resolve_waits(const Graph& graph, std::vector<MoveIntent> intents,
                                      std::span<const AgentState> agents, Rng& rng,
                                      WaitPolicy policy = WaitPolicy::kCrossing);

struct StepOutcome {
  std::vector<AgentState> agents;
  std::vector<NodeId> unvisited;
  StepRecord record;
};

/// One simultaneous move of all agents: assign, compute forces, select,
/// resolve waits, move, then mark occupied targets visited. Agents without an
/// assignable target finish in place. `t` is the index given to the record.
StepOutcome step(const Graph& graph, std::vector<AgentState> agents, std::vector<NodeId> unvisited,
                 const ForceParams& params, const RunOptions& options, Rng& rng, std::size_t t,
                 PathCache* cache = nullptr);

/// Runs the force-based router until every target is visited or the step cap
/// is hit. Throws InputError when validate(mission) reports problems.
MissionResult run_mission(const Mission& mission, const ForceParams& params, const RunOptions& options = {});

/// Cost recomputed from the step records under the result's cost model.
double recompute_cost(const Graph& graph, const MissionResult& result);

/// Deduplicated, sorted set of the non-wait edges in `intents`.
std::vector<Edge> traversed_edges(const Graph& graph, std::span<const MoveIntent> intents);

/// 4 * m^2, the default step cap.
std::size_t default_step_cap(const Graph& graph);

}  // namespace modroute
