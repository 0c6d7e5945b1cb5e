#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modroute/mission.hpp"
#include "modroute/routing.hpp"

namespace modroute {

/// Draws distinct starts and targets uniformly (without replacement) from
/// the graph's nodes, or starts from `start_pool` when given. Resamples up
/// to 100 times until every target is reachable from some start.
/// Deterministic in (graph, n, n_targets, seed, start_pool).
Mission generate_random_mission(std::shared_ptr<const Graph> graph, std::size_t n_agents, std::size_t n_targets,
                                std::uint64_t seed, const std::vector<NodeId>& start_pool = {});

enum class Method { kForceBased, kNonModular };

const char* method_name(Method method);

struct BatchConfig {
  std::shared_ptr<const Graph> graph;
  std::size_t n_agents = 2;
  /// Defaults to 2 * n_agents.
  std::optional<std::size_t> n_targets;
  std::size_t trials = 100;
  ForceParams params;
  std::uint64_t base_seed = 0;
  std::optional<std::size_t> max_steps;
  double wait_cost = 0.0;
  std::vector<NodeId> start_pool;
  /// When set, every trial runs this mission instead of a generated one
  /// (n_agents and n_targets are then taken from it).
  std::optional<Mission> fixed_mission;
  /// Worker threads; 0 picks hardware concurrency. Output does not depend on it.
  std::size_t threads = 0;

  std::size_t targets() const { return n_targets.value_or(2 * n_agents); }
  /// Seed of trial `trial`: base_seed + trial.
  std::uint64_t trial_seed(std::size_t trial) const { return base_seed + trial; }
};

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Method method = Method::kForceBased;
  std::size_t n_agents = 0;
  std::size_t n_targets = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t k = 0;
  double total_cost = 0.0;
  std::size_t steps = 0;
  bool completed = false;
  std::uint64_t mission_hash = 0;
};

struct MethodSummary {
  double mean = 0.0;
  double variance = 0.0;  // sample variance; 0 for a single trial
  /// Percentage of trials in which the method was (possibly jointly) cheapest.
  double best_frequency = 0.0;
  std::size_t completed = 0;
};

struct BatchResult {
  std::vector<TrialRow> rows;  // ordered by trial, then method
  std::map<Method, MethodSummary> summary;
};

/// Runs both methods on the same seeded mission per trial. A failing run is
/// recorded as a row with completed = false and never aborts the batch.
BatchResult run_batch(const BatchConfig& config);

/// The rows of a single trial of `config` (one per method), exactly as
/// run_batch would produce them. `trial` may exceed config.trials.
std::vector<TrialRow> run_trial(const BatchConfig& config, std::size_t trial);

/// Cheapest-method frequencies over rows grouped by trial. Incomplete runs
/// never count as best; ties credit every tied method (relative slack 1e-9).
std::map<Method, double> best_method_frequency(const std::vector<TrialRow>& rows);

/// CSV with header trial,seed,method,n_agents,n_targets,alpha,beta,k,total_cost,steps,completed.
std::string batch_csv(const std::vector<TrialRow>& rows);
std::string csv_row(const TrialRow& row);

struct SweepConfig {
  std::shared_ptr<const Graph> graph;
  std::size_t n_agents = 5;
  std::optional<std::size_t> n_targets;
  std::size_t trials = 100;
  std::vector<double> alpha_grid{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> beta_grid{0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t k = 5;
  std::uint64_t base_seed = 0;
  std::optional<std::size_t> max_steps;
  double wait_cost = 0.0;
  bool sum_paths = false;
  std::vector<NodeId> start_pool;
  std::size_t threads = 0;

  std::size_t targets() const { return n_targets.value_or(2 * n_agents); }
};

struct SweepCell {
  double alpha = 0.0;
  double beta = 0.0;
  double mean_cost = 0.0;
  double variance = 0.0;
  std::size_t completed = 0;
  /// (worst mean - mean) / (worst mean - best mean): 1 for the cheapest cell,
  /// 0 for the most expensive; 1 everywhere when all means coincide.
  double score = 1.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // alpha-major, in grid order
  std::vector<TrialRow> rows;    // force-based rows for every cell and trial
  const SweepCell& cell(double alpha, double beta) const;
};

/// Force-based runs for every (alpha, beta) cell on one shared set of
/// missions: trial t uses the same mission in every cell.
SweepResult sensitivity_sweep(const SweepConfig& config);

/// CSV with header alpha,beta,trials,mean_cost,variance,completed,score.
std::string sweep_csv(const SweepResult& result, std::size_t trials);

/// Rows in batch_csv column order followed by mission_hash (hex).
std::string sweep_rows_csv(const std::vector<TrialRow>& rows);

}  // namespace modroute
