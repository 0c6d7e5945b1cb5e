#include "modroute/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include <fmt/format.h>

#include "modroute/baselines.hpp"

namespace modroute {

namespace {

constexpr std::size_t kMissionAttempts = 100;

// Runs body(i) for i in [0, count) on `threads` workers. Bodies write to
// disjoint slots, so the results do not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        (void)w;
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Partial Fisher-Yates: the first `take` entries become a uniform sample.
void sample_prefix(std::vector<NodeId>& pool, std::size_t take, Rng& rng) {
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t count = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(xs.size() - 1);
  }
  return m;
}

TrialRow row_from(const MissionResult& result, std::size_t trial, std::uint64_t seed, Method method,
                  std::size_t n_agents, std::size_t n_targets, const ForceParams& params, std::uint64_t hash) {
  return {trial,          seed,         method,      n_agents, n_targets, params.alpha, params.beta, params.k,
          result.total_cost, result.steps_taken, result.completed, hash};
}

TrialRow failed_row(std::size_t trial, std::uint64_t seed, Method method, std::size_t n_agents,
                    std::size_t n_targets, const ForceParams& params) {
  return {trial, seed, method, n_agents, n_targets, params.alpha, params.beta, params.k, kInfinity, 0, false, 0};
}

}  // namespace

Mission generate_random_mission(std::shared_ptr<const Graph> graph, std::size_t n_agents, std::size_t n_targets,
                                std::uint64_t seed, const std::vector<NodeId>& start_pool) {
  if (!graph) throw InputError("mission generation needs a graph");
  const std::size_t m = graph->node_count();
  if (n_agents == 0 || n_targets == 0) throw InputError("need at least one agent and one target");
  if (start_pool.empty()) {
    if (n_agents + n_targets > m) {
      throw InputError(fmt::format("{} agents + {} targets exceed the {} nodes available", n_agents, n_targets, m));
    }
  } else {
    for (NodeId s : start_pool) {
      if (s >= m) throw InputError(fmt::format("start pool node {} outside [0, {})", s, m));
    }
    if (n_agents > start_pool.size()) {
      throw InputError(fmt::format("{} agents exceed the start pool of {}", n_agents, start_pool.size()));
    }
    if (n_targets + n_agents > m) {
      throw InputError(fmt::format("{} targets do not fit beside {} starts in {} nodes", n_targets, n_agents, m));
    }
  }

  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kMissionAttempts; ++attempt) {
    std::vector<NodeId> starts;
    std::vector<NodeId> targets;
    if (start_pool.empty()) {
      std::vector<NodeId> nodes(m);
      for (std::size_t i = 0; i < m; ++i) nodes[i] = static_cast<NodeId>(i);
      sample_prefix(nodes, n_agents + n_targets, rng);
      starts.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(n_agents));
      targets.assign(nodes.begin() + static_cast<std::ptrdiff_t>(n_agents),
                     nodes.begin() + static_cast<std::ptrdiff_t>(n_agents + n_targets));
    } else {
      std::vector<NodeId> pool = start_pool;
      sample_prefix(pool, n_agents, rng);
      starts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_agents));
      std::vector<NodeId> rest;
      for (std::size_t i = 0; i < m; ++i) {
        if (std::find(starts.begin(), starts.end(), static_cast<NodeId>(i)) == starts.end()) {
          rest.push_back(static_cast<NodeId>(i));
        }
      }
      sample_prefix(rest, n_targets, rng);
      targets.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(n_targets));
    }
    Mission mission = make_mission(graph, std::move(starts), std::move(targets));
    if (validate(mission).empty()) return mission;
  }
  throw InputError(fmt::format("no feasible mission found after {} resamples (seed {})", kMissionAttempts, seed));
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kForceBased: return "force";
    case Method::kNonModular: return "nonmodular";
  }
  return "?";
}

std::map<Method, double> best_method_frequency(const std::vector<TrialRow>& rows) {
  std::map<std::size_t, std::vector<const TrialRow*>> by_trial;
  std::map<Method, double> wins;
  for (const TrialRow& row : rows) {
    by_trial[row.trial].push_back(&row);
    wins.emplace(row.method, 0.0);
  }
  for (const auto& [trial, group] : by_trial) {
    double best = kInfinity;
    for (const TrialRow* row : group) {
      if (row->completed) best = std::min(best, row->total_cost);
    }
    if (!std::isfinite(best)) continue;
    for (const TrialRow* row : group) {
      if (row->completed && row->total_cost <= best + 1e-9 * std::max(1.0, best)) wins[row->method] += 1.0;
    }
  }
  if (!by_trial.empty()) {
    for (auto& [method, count] : wins) count = 100.0 * count / static_cast<double>(by_trial.size());
  }
  return wins;
}

namespace {

constexpr std::array kMethods{Method::kForceBased, Method::kNonModular};

BatchConfig normalized(const BatchConfig& input) {
  BatchConfig config = input;
  if (config.fixed_mission) {
    config.graph = config.fixed_mission->graph;
    config.n_agents = config.fixed_mission->starts.size();
    config.n_targets = config.fixed_mission->targets.size();
  }
  if (!config.graph) throw InputError("batch needs a graph");
  if (config.trials == 0) throw InputError("trials must be at least 1");
  if (config.n_agents == 0) throw InputError("need at least one agent");
  if (config.targets() == 0 || config.targets() > config.graph->node_count()) {
    throw InputError(fmt::format("target count {} must lie in [1, {}]", config.targets(), config.graph->node_count()));
  }
  if (!config.fixed_mission && config.n_agents + config.targets() > config.graph->node_count()) {
    throw InputError(fmt::format("{} agents + {} targets exceed the {} nodes available", config.n_agents,
                                 config.targets(), config.graph->node_count()));
  }
  config.params.validate();
  return config;
}

std::vector<TrialRow> trial_rows(const BatchConfig& config, std::size_t trial) {
  const std::uint64_t seed = config.trial_seed(trial);
  RunOptions options;
  options.seed = seed;
  options.max_steps = config.max_steps;
  options.wait_cost = config.wait_cost;
  std::optional<Mission> mission;
  try {
    mission = config.fixed_mission ? *config.fixed_mission
                                   : generate_random_mission(config.graph, config.n_agents, config.targets(), seed,
                                                             config.start_pool);
  } catch (const InputError&) {
  }
  std::vector<TrialRow> rows;
  for (Method method : kMethods) {
    if (!mission) {
      rows.push_back(failed_row(trial, seed, method, config.n_agents, config.targets(), config.params));
      continue;
    }
    try {
      const MissionResult result = method == Method::kForceBased ? run_mission(*mission, config.params, options)
                                                                 : run_nonmodular_baseline(*mission, options);
      rows.push_back(row_from(result, trial, seed, method, config.n_agents, config.targets(), config.params,
                              mission_hash(*mission)));
    } catch (const InputError&) {
      rows.push_back(failed_row(trial, seed, method, config.n_agents, config.targets(), config.params));
    }
  }
  return rows;
}

}  // namespace

std::vector<TrialRow> run_trial(const BatchConfig& config, std::size_t trial) {
  return trial_rows(normalized(config), trial);
}

BatchResult run_batch(const BatchConfig& input) {
  const BatchConfig config = normalized(input);
  std::vector<TrialRow> rows(config.trials * kMethods.size());
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    auto out = trial_rows(config, trial);
    std::move(out.begin(), out.end(), rows.begin() + static_cast<std::ptrdiff_t>(trial * kMethods.size()));
  });

  BatchResult result;
  result.rows = std::move(rows);
  const auto frequencies = best_method_frequency(result.rows);
  for (Method method : kMethods) {
    std::vector<double> costs;
    for (const TrialRow& row : result.rows) {
      if (row.method == method && row.completed) costs.push_back(row.total_cost);
    }
    const Moments mo = moments(costs);
    MethodSummary summary;
    summary.mean = mo.mean;
    summary.variance = mo.variance;
    summary.completed = mo.count;
    if (auto it = frequencies.find(method); it != frequencies.end()) summary.best_frequency = it->second;
    result.summary[method] = summary;
  }
  return result;
}

std::string csv_row(const TrialRow& row) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{}", row.trial, row.seed, method_name(row.method), row.n_agents,
                     row.n_targets, row.alpha, row.beta, row.k, row.total_cost, row.steps,
                     row.completed ? "true" : "false");
}

std::string batch_csv(const std::vector<TrialRow>& rows) {
  std::string out = "trial,seed,method,n_agents,n_targets,alpha,beta,k,total_cost,steps,completed\n";
  for (const TrialRow& row : rows) {
    out += csv_row(row);
    out += '\n';
  }
  return out;
}

std::string sweep_rows_csv(const std::vector<TrialRow>& rows) {
  std::string out = "trial,seed,method,n_agents,n_targets,alpha,beta,k,total_cost,steps,completed,mission_hash\n";
  for (const TrialRow& row : rows) out += fmt::format("{},{:016x}\n", csv_row(row), row.mission_hash);
  return out;
}

const SweepCell& SweepResult::cell(double alpha, double beta) const {
  for (const SweepCell& c : cells) {
    if (c.alpha == alpha && c.beta == beta) return c;
  }
  throw std::out_of_range(fmt::format("no sweep cell ({}, {})", alpha, beta));
}

SweepResult sensitivity_sweep(const SweepConfig& config) {
  if (!config.graph) throw InputError("sweep needs a graph");
  if (config.alpha_grid.empty() || config.beta_grid.empty()) throw InputError("sweep grids must be non-empty");
  if (config.trials == 0) throw InputError("trials must be at least 1");
  if (config.n_agents == 0 || config.targets() == 0 ||
      config.n_agents + config.targets() > config.graph->node_count()) {
    throw InputError(fmt::format("{} agents + {} targets do not fit in {} nodes", config.n_agents, config.targets(),
                                 config.graph->node_count()));
  }

  std::vector<ForceParams> cells;
  for (double alpha : config.alpha_grid) {
    for (double beta : config.beta_grid) {
      ForceParams params{alpha, beta, config.k, config.sum_paths};
      params.validate();
      cells.push_back(params);
    }
  }

  std::vector<std::optional<Mission>> missions(config.trials);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    try {
      missions[trial] = generate_random_mission(config.graph, config.n_agents, config.targets(),
                                                config.base_seed + trial, config.start_pool);
    } catch (const InputError&) {
    }
  }

  SweepResult result;
  result.rows.resize(cells.size() * config.trials);
  parallel_for(result.rows.size(), config.threads, [&](std::size_t job) {
    const std::size_t c = job / config.trials;
    const std::size_t trial = job % config.trials;
    const std::uint64_t seed = config.base_seed + trial;
    const ForceParams& params = cells[c];
    TrialRow& slot = result.rows[job];
    if (!missions[trial]) {
      slot = failed_row(trial, seed, Method::kForceBased, config.n_agents, config.targets(), params);
      return;
    }
    RunOptions options;
    options.seed = seed;
    options.max_steps = config.max_steps;
    options.wait_cost = config.wait_cost;
    try {
      slot = row_from(run_mission(*missions[trial], params, options), trial, seed, Method::kForceBased,
                      config.n_agents, config.targets(), params, mission_hash(*missions[trial]));
    } catch (const InputError&) {
      slot = failed_row(trial, seed, Method::kForceBased, config.n_agents, config.targets(), params);
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> costs;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const TrialRow& row = result.rows[c * config.trials + trial];
      if (row.completed) costs.push_back(row.total_cost);
    }
    const Moments mo = moments(costs);
    SweepCell cell;
    cell.alpha = cells[c].alpha;
    cell.beta = cells[c].beta;
    cell.mean_cost = mo.count ? mo.mean : kInfinity;
    cell.variance = mo.variance;
    cell.completed = mo.count;
    result.cells.push_back(cell);
  }

  double lo = kInfinity;
  double hi = -kInfinity;
  for (const SweepCell& cell : result.cells) {
    if (!std::isfinite(cell.mean_cost)) continue;
    lo = std::min(lo, cell.mean_cost);
    hi = std::max(hi, cell.mean_cost);
  }
  for (SweepCell& cell : result.cells) {
    if (!std::isfinite(cell.mean_cost)) {
      cell.score = 0.0;
    } else if (hi > lo) {
      cell.score = (hi - cell.mean_cost) / (hi - lo);
    } else {
      cell.score = 1.0;
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result, std::size_t trials) {
  std::string out = "alpha,beta,trials,mean_cost,variance,completed,score\n";
  for (const SweepCell& c : result.cells) {
    out += fmt::format("{},{},{},{},{},{},{}\n", c.alpha, c.beta, trials, c.mean_cost, c.variance, c.completed,
                       c.score);
  }
  return out;
}

}  // namespace modroute
