#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "modroute/routing.hpp"

namespace modroute {

namespace {

double distance_to_target(const Graph& graph, const AgentState& agent) {
  if (!agent.assigned_target) return kInfinity;
  return dijkstra(graph, agent.position).distance.at(*agent.assigned_target);
}

void drop_occupied(std::vector<NodeId>& unvisited, std::span<const AgentState> agents) {
  std::erase_if(unvisited, [&](NodeId target) {
    return std::any_of(agents.begin(), agents.end(), [&](const AgentState& a) { return a.position == target; });
  });
}

}  // namespace

std::size_t default_step_cap(const Graph& graph) {
  const std::size_t m = graph.node_count();
  return 4 * m * m;
}

std::vector<Edge> traversed_edges(const Graph& graph, std::span<const MoveIntent> intents) {
  std::vector<Edge> out;
  for (const MoveIntent& intent : intents) {
    if (intent.waiting || intent.from == intent.to) continue;
    auto w = graph.edge_weight(intent.from, intent.to);
    if (!w) throw std::logic_error(fmt::format("intent moves along missing edge ({}, {})", intent.from, intent.to));
    out.push_back({intent.from, intent.to, *w});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<MoveIntent> resolve_waits(const Graph& graph, std::vector<MoveIntent> intents,
                                      std::span<const AgentState> agents, Rng& rng, WaitPolicy policy) {
  if (policy == WaitPolicy::kNone) return intents;
  std::unordered_map<int, const AgentState*> by_id;
  for (const AgentState& a : agents) by_id.emplace(a.agent_id, &a);
  auto state_of = [&](int id) -> const AgentState& {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw std::invalid_argument(fmt::format("intent for unknown agent {}", id));
    return *it->second;
  };
  std::unordered_map<NodeId, std::vector<double>> trees;
  auto dist = [&](NodeId from, NodeId to) {
    auto it = trees.find(from);
    if (it == trees.end()) it = trees.emplace(from, dijkstra(graph, from).distance).first;
    return it->second[to];
  };
  auto separation = [&](NodeId x, NodeId y) { return std::min(dist(x, y), dist(y, x)); };
  auto conflicting = [&](const MoveIntent& a, const MoveIntent& b) {
    if (a.from == b.to && a.to == b.from) return true;
    if (policy != WaitPolicy::kCrossing || a.from == b.from || a.to == b.to) return false;
    return dist(a.to, b.from) < dist(a.from, b.from) && dist(b.to, a.from) < dist(b.from, a.from) &&
           separation(a.to, b.to) >= separation(a.from, b.from);
  };

  for (std::size_t i = 0; i < intents.size(); ++i) {
    for (std::size_t j = i + 1; j < intents.size(); ++j) {
      MoveIntent& a = intents[i];
      MoveIntent& b = intents[j];
      if (a.waiting || b.waiting || a.from == a.to || b.from == b.to) continue;
      if (!conflicting(a, b)) continue;

      const double da = distance_to_target(graph, state_of(a.agent_id));
      const double db = distance_to_target(graph, state_of(b.agent_id));
      bool a_waits;
      if (da < db) {
        a_waits = true;
      } else if (db < da) {
        a_waits = false;
      } else {
        a_waits = fair_coin(rng);
      }
      MoveIntent& waiter = a_waits ? a : b;
      waiter = MoveIntent::wait(waiter.agent_id, waiter.from);
    }
  }
  return intents;
}

StepOutcome step(const Graph& graph, std::vector<AgentState> agents, std::vector<NodeId> unvisited,
                 const ForceParams& params, const RunOptions& options, Rng& rng, std::size_t t,
                 PathCache* cache) {
  StepOutcome out;
  out.record.t = t;

  const auto assignment = assign_targets(graph, agents, unvisited);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    agents[i].assigned_target = assignment[i];
    if (!assignment[i]) agents[i].finished = true;
  }
  const bool any_active = std::any_of(agents.begin(), agents.end(), [](const AgentState& a) { return !a.finished; });
  if (!any_active) {
    out.agents = std::move(agents);
    out.unvisited = std::move(unvisited);
    return out;
  }

  std::vector<MoveIntent> intents;
  for (const AgentState& agent : agents) {
    if (agent.finished) continue;
    intents.push_back(select_edge(compute_edge_forces(graph, agent, agents, params, cache)));
  }
  intents = resolve_waits(graph, std::move(intents), agents, rng, options.wait_policy);

  std::size_t next = 0;
  std::size_t waits = 0;
  for (AgentState& agent : agents) {
    if (!agent.finished) {
      const MoveIntent& intent = intents[next++];
      agent.position = intent.to;
      if (intent.waiting || intent.from == intent.to) ++waits;
    }
    agent.history.push_back(agent.position);
  }

  out.record.traversed = traversed_edges(graph, intents);
  double cost = 0.0;
  for (const Edge& e : out.record.traversed) cost += e.weight;
  out.record.step_cost = cost + options.wait_cost * static_cast<double>(waits);
  out.record.intents = std::move(intents);

  drop_occupied(unvisited, agents);
  out.agents = std::move(agents);
  out.unvisited = std::move(unvisited);
  return out;
}

MissionResult run_mission(const Mission& mission, const ForceParams& params, const RunOptions& options) {
  if (auto problems = validate(mission); !problems.empty()) {
    throw InputError("invalid mission: " + fmt::format("{}", fmt::join(problems, "; ")));
  }
  params.validate();
  if (!(options.wait_cost >= 0.0)) throw InputError("wait cost must be non-negative");

  const Graph& graph = mission.g();
  std::vector<AgentState> agents;
  for (std::size_t i = 0; i < mission.starts.size(); ++i) {
    agents.push_back(AgentState::at(static_cast<int>(i), mission.starts[i]));
  }
  std::vector<NodeId> unvisited = mission.targets;
  drop_occupied(unvisited, agents);

  const std::size_t cap = options.max_steps.value_or(default_step_cap(graph));
  Rng rng(options.seed);
  PathCache cache(graph, params.k);

  MissionResult result;
  result.cost_model = CostModel::kShared;
  result.wait_cost = options.wait_cost;
  while (!unvisited.empty()) {
    if (result.steps.size() >= cap) {
      result.diagnostic = fmt::format("step cap {} reached with {} target(s) unvisited; agents are likely oscillating",
                                      cap, unvisited.size());
      break;
    }
    auto outcome = step(graph, std::move(agents), std::move(unvisited), params, options, rng,
                        result.steps.size() + 1, &cache);
    agents = std::move(outcome.agents);
    unvisited = std::move(outcome.unvisited);
    if (outcome.record.intents.empty()) {
      result.diagnostic = fmt::format("no agent can reach the {} remaining target(s)", unvisited.size());
      break;
    }
    result.total_cost += outcome.record.step_cost;
    result.steps.push_back(std::move(outcome.record));
  }

  result.completed = unvisited.empty();
  result.steps_taken = result.steps.size();
  for (AgentState& agent : agents) result.per_agent_paths.push_back(std::move(agent.history));
  return result;
}

double recompute_cost(const Graph& graph, const MissionResult& result) {
  double total = 0.0;
  for (const StepRecord& record : result.steps) {
    double step_total = 0.0;
    std::size_t waits = 0;
    if (result.cost_model == CostModel::kShared) {
      for (const Edge& e : traversed_edges(graph, record.intents)) step_total += e.weight;
    } else {
      for (const MoveIntent& intent : record.intents) {
        if (!intent.waiting && intent.from != intent.to) step_total += *graph.edge_weight(intent.from, intent.to);
      }
    }
    for (const MoveIntent& intent : record.intents) {
      if (intent.waiting || intent.from == intent.to) ++waits;
    }
    total += step_total + result.wait_cost * static_cast<double>(waits);
  }
  return total;
}

}  // namespace modroute
