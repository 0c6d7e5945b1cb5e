#include <algorithm>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "modroute/baselines.hpp"

namespace modroute {

MissionResult run_nonmodular_baseline(const Mission& mission, const RunOptions& options) {
  if (auto problems = validate(mission); !problems.empty()) {
    throw InputError("invalid mission: " + fmt::format("{}", fmt::join(problems, "; ")));
  }
  const Graph& graph = mission.g();
  std::vector<AgentState> agents;
  for (std::size_t i = 0; i < mission.starts.size(); ++i) {
    agents.push_back(AgentState::at(static_cast<int>(i), mission.starts[i]));
  }
  std::vector<NodeId> unvisited = mission.targets;
  auto drop_occupied = [&] {
    std::erase_if(unvisited, [&](NodeId target) {
      return std::any_of(agents.begin(), agents.end(), [&](const AgentState& a) { return a.position == target; });
    });
  };
  drop_occupied();

  const std::size_t cap = options.max_steps.value_or(default_step_cap(graph));
  MissionResult result;
  result.cost_model = CostModel::kPerAgent;
  result.wait_cost = options.wait_cost;

  while (!unvisited.empty()) {
    if (result.steps.size() >= cap) {
      result.diagnostic = fmt::format("step cap {} reached", cap);
      break;
    }
    const auto assignment = assign_targets(graph, agents, unvisited);
    StepRecord record;
    record.t = result.steps.size() + 1;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      AgentState& agent = agents[i];
      agent.assigned_target = assignment[i];
      if (!assignment[i]) agent.finished = true;
      if (agent.finished) continue;
      const auto path = shortest_path(graph, agent.position, *assignment[i]);
      // Assigned targets are reachable and never the agent's own node here.
      const NodeId next = path->nodes.at(1);
      record.intents.push_back({agent.agent_id, agent.position, next, false});
      record.step_cost += *graph.edge_weight(agent.position, next);
    }
    if (record.intents.empty()) {
      result.diagnostic = fmt::format("no agent can reach the {} remaining target(s)", unvisited.size());
      break;
    }
    std::size_t next_intent = 0;
    for (AgentState& agent : agents) {
      if (!agent.finished) agent.position = record.intents[next_intent++].to;
      agent.history.push_back(agent.position);
    }
    record.traversed = traversed_edges(graph, record.intents);
    drop_occupied();
    result.total_cost += record.step_cost;
    result.steps.push_back(std::move(record));
  }

  result.completed = unvisited.empty();
  result.steps_taken = result.steps.size();
  for (AgentState& agent : agents) result.per_agent_paths.push_back(std::move(agent.history));
  return result;
}

}  // namespace modroute
