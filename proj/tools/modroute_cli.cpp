#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "modroute/baselines.hpp"
#include "modroute/experiments.hpp"
#include "modroute/graph_io.hpp"
#include "modroute/grid.hpp"
#include "modroute/routing.hpp"

namespace {

using namespace modroute;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kInvalidInput = 1, kInfeasible = 2, kStepCap = 3 };

// Failure with a specific exit code, reported on stderr by main.
struct CliError : std::runtime_error {
  CliError(Exit code, const std::string& what) : std::runtime_error(what), code(code) {}
  Exit code;
};

struct GraphOptions {
  std::string graph_path;
  std::string grid;
  std::uint64_t grid_seed = 1;
  double perturbation = 0.5;
  std::string weight_attr = "length";
};

struct MissionOptions {
  std::size_t agents = 2;
  std::optional<std::size_t> targets;
  std::vector<std::string> start_nodes;
  std::vector<std::string> target_nodes;
  std::vector<std::string> starts_from;
  std::uint64_t seed = 0;
};

struct RouterOptions {
  double alpha = 0.5;
  double beta = 1.0;
  std::size_t k = 5;
  bool force_sum = false;
  std::optional<std::size_t> max_steps;
  double wait_cost = 0.0;
  WaitPolicy wait_policy = WaitPolicy::kCrossing;

  ForceParams params() const { return ForceParams{alpha, beta, k, force_sum}; }
};

void add_graph_options(CLI::App& app, GraphOptions& g) {
  auto* path = app.add_option("--graph", g.graph_path, "Graph file: GraphML (.graphml, .xml) or edge list");
  auto* grid = app.add_option("--grid", g.grid, "Synthetic perturbed grid, e.g. 8x8");
  path->excludes(grid);
  grid->excludes(path);
  app.add_option("--grid-seed", g.grid_seed, "Seed of the grid edge weights")->default_val(1);
  app.add_option("--grid-perturbation", g.perturbation, "Grid weights lie in [1, 1 + p)")->default_val(0.5);
  app.add_option("--weight-attr", g.weight_attr, "GraphML edge attribute holding the weight")->default_val("length");
}

void add_mission_options(CLI::App& app, MissionOptions& m, bool random_only = false) {
  app.add_option("--agents", m.agents, "Number of agents")->default_val(2);
  app.add_option("--targets", m.targets, "Number of targets (default 2 x agents)");
  app.add_option("--seed", m.seed, "Base seed")->default_val(0);
  app.add_option("--starts-from", m.starts_from, "Node labels that starts are drawn from")->delimiter(',');
  if (!random_only) {
    app.add_option("--start-nodes", m.start_nodes, "Explicit start node labels")->delimiter(',');
    app.add_option("--target-nodes", m.target_nodes, "Explicit target node labels")->delimiter(',');
  }
}

void add_router_options(CLI::App& app, RouterOptions& r) {
  app.add_option("--alpha", r.alpha, "Agent-agent force scale")->default_val(0.5);
  app.add_option("--beta", r.beta, "Agent-target force scale")->default_val(1.0);
  app.add_option("--k", r.k, "Sampled shortest paths per force source")->default_val(5);
  app.add_flag("--force-sum", r.force_sum, "Sum forces of paths sharing a first edge instead of taking the max");
  app.add_option("--max-steps", r.max_steps, "Step cap (default 4 m^2)");
  app.add_option("--wait-cost", r.wait_cost, "Cost per waiting agent per step")->default_val(0.0);
  const std::map<std::string, WaitPolicy> policies{
      {"crossing", WaitPolicy::kCrossing}, {"swap", WaitPolicy::kSwap}, {"none", WaitPolicy::kNone}};
  app.add_option("--wait-policy", r.wait_policy, "Which conflicting pairs wait: crossing, swap or none")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case))
      ->default_str("crossing");
}

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::shared_ptr<const Graph> load_graph(const GraphOptions& opts) {
  Warnings warnings;
  std::shared_ptr<const Graph> graph;
  if (!opts.graph_path.empty()) {
    if (has_suffix(opts.graph_path, ".graphml") || has_suffix(opts.graph_path, ".xml")) {
      graph = std::make_shared<const Graph>(load_graphml(opts.graph_path, opts.weight_attr, &warnings));
    } else {
      graph = std::make_shared<const Graph>(load_edge_list(read_file(opts.graph_path), &warnings));
    }
  } else {
    GridSpec spec = parse_grid_spec(opts.grid.empty() ? "8x8" : opts.grid);
    spec.seed = opts.grid_seed;
    spec.perturbation = opts.perturbation;
    graph = std::make_shared<const Graph>(make_grid(spec));
  }
  for (const std::string& w : warnings) fmt::print(stderr, "warning: {}\n", w);
  return graph;
}

std::vector<NodeId> resolve_labels(const Graph& graph, const std::vector<std::string>& labels, const char* what) {
  std::vector<NodeId> out;
  for (const std::string& label : labels) {
    auto id = graph.find_label(label);
    if (!id) throw CliError(kInvalidInput, fmt::format("unknown {} node '{}'", what, label));
    out.push_back(*id);
  }
  return out;
}

// Reachability problems mean an infeasible mission; anything else is bad input.
void check_mission(const Mission& mission) {
  const auto problems = validate(mission);
  if (problems.empty()) return;
  std::string text;
  for (const std::string& p : problems) text += (text.empty() ? "" : "; ") + p;
  const bool only_reachability = std::all_of(problems.begin(), problems.end(), [](const std::string& p) {
    return p.find("unreachable") != std::string::npos;
  });
  throw CliError(only_reachability ? kInfeasible : kInvalidInput, "invalid mission: " + text);
}

Mission build_mission(std::shared_ptr<const Graph> graph, const MissionOptions& opts) {
  const bool explicit_starts = !opts.start_nodes.empty();
  const bool explicit_targets = !opts.target_nodes.empty();
  if (explicit_starts != explicit_targets) {
    throw CliError(kInvalidInput, "--start-nodes and --target-nodes must be given together");
  }
  Mission mission;
  if (explicit_starts) {
    mission = make_mission(graph, resolve_labels(*graph, opts.start_nodes, "start"),
                           resolve_labels(*graph, opts.target_nodes, "target"));
  } else {
    const auto pool = resolve_labels(*graph, opts.starts_from, "start pool");
    mission = generate_random_mission(graph, opts.agents, opts.targets.value_or(2 * opts.agents), opts.seed, pool);
  }
  check_mission(mission);
  return mission;
}

json labels_of(const Graph& graph, const std::vector<NodeId>& nodes) {
  json out = json::array();
  for (NodeId v : nodes) out.push_back(graph.label(v));
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(kInvalidInput, fmt::format("cannot write '{}'", path));
  out << text;
}

json mission_json(const Mission& mission) {
  return json{{"starts", labels_of(mission.g(), mission.starts)},
              {"targets", labels_of(mission.g(), mission.targets)},
              {"mission_hash", fmt::format("{:016x}", mission_hash(mission))}};
}

json result_json(const Graph& graph, const MissionResult& r) {
  json paths = json::array();
  for (const auto& p : r.per_agent_paths) paths.push_back(labels_of(graph, p));
  json steps = json::array();
  for (const StepRecord& s : r.steps) {
    json edges = json::array();
    for (const Edge& e : s.traversed) edges.push_back({graph.label(e.src), graph.label(e.dst)});
    json waiting = json::array();
    for (const MoveIntent& m : s.intents) {
      if (m.waiting) waiting.push_back(m.agent_id);
    }
    steps.push_back({{"t", s.t}, {"traversed", edges}, {"waiting", waiting}, {"step_cost", s.step_cost}});
  }
  return json{{"completed", r.completed},
              {"total_cost", r.total_cost},
              {"steps_taken", r.steps_taken},
              {"diagnostic", r.diagnostic},
              {"per_agent_paths", paths},
              {"steps", steps}};
}

int cmd_run(const GraphOptions& g, const MissionOptions& m, const RouterOptions& r, const std::string& out,
            bool baseline) {
  const auto graph = load_graph(g);
  const Mission mission = build_mission(graph, m);
  RunOptions options;
  options.seed = m.seed;
  options.max_steps = r.max_steps;
  options.wait_cost = r.wait_cost;
  options.wait_policy = r.wait_policy;
  const MissionResult result =
      baseline ? run_nonmodular_baseline(mission, options) : run_mission(mission, r.params(), options);
  json doc{{"method", method_name(baseline ? Method::kNonModular : Method::kForceBased)},
           {"mission", mission_json(mission)},
           {"params", {{"alpha", r.alpha}, {"beta", r.beta}, {"k", r.k}, {"force_sum", r.force_sum}}},
           {"seed", m.seed},
           {"result", result_json(*graph, result)}};
  emit(doc.dump(2) + "\n", out);
  if (!result.completed) {
    fmt::print(stderr, "{}\n", result.diagnostic);
    return result.steps_taken >= options.max_steps.value_or(default_step_cap(*graph)) ? kStepCap : kInfeasible;
  }
  return kOk;
}

json summary_json(const BatchResult& result) {
  json out = json::object();
  for (const auto& [method, s] : result.summary) {
    out[method_name(method)] = {{"mean_cost", s.mean},
                                {"variance", s.variance},
                                {"best_frequency_percent", s.best_frequency},
                                {"completed", s.completed}};
  }
  return out;
}

int cmd_batch(const GraphOptions& g, const MissionOptions& m, const RouterOptions& r, std::size_t trials,
              std::size_t threads, const std::string& out) {
  BatchConfig config;
  config.graph = load_graph(g);
  config.n_agents = m.agents;
  config.n_targets = m.targets;
  config.trials = trials;
  config.params = r.params();
  config.base_seed = m.seed;
  config.max_steps = r.max_steps;
  config.wait_cost = r.wait_cost;
  config.start_pool = resolve_labels(*config.graph, m.starts_from, "start pool");
  config.threads = threads;
  const BatchResult result = run_batch(config);
  if (!out.empty()) emit(batch_csv(result.rows), out);
  json doc{{"trials", trials},
           {"n_agents", config.n_agents},
           {"n_targets", config.targets()},
           {"summary", summary_json(result)}};
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int cmd_sweep(const GraphOptions& g, const MissionOptions& m, const RouterOptions& r, std::size_t trials,
              std::size_t threads, const std::vector<double>& alphas, const std::vector<double>& betas,
              const std::string& out, const std::string& rows_out) {
  SweepConfig config;
  config.graph = load_graph(g);
  config.n_agents = m.agents;
  config.n_targets = m.targets;
  config.trials = trials;
  if (!alphas.empty()) config.alpha_grid = alphas;
  if (!betas.empty()) config.beta_grid = betas;
  config.k = r.k;
  config.sum_paths = r.force_sum;
  config.base_seed = m.seed;
  config.max_steps = r.max_steps;
  config.wait_cost = r.wait_cost;
  config.start_pool = resolve_labels(*config.graph, m.starts_from, "start pool");
  config.threads = threads;
  const SweepResult result = sensitivity_sweep(config);
  const std::string csv = sweep_csv(result, trials);
  emit(csv, out);
  if (!rows_out.empty()) emit(sweep_rows_csv(result.rows), rows_out);
  return kOk;
}

int cmd_oracle(const GraphOptions& g, const MissionOptions& m, std::size_t horizon, double wait_cost,
               const std::string& out) {
  const auto graph = load_graph(g);
  const Mission mission = build_mission(graph, m);
  const OracleResult r = brute_force_optimal(mission, horizon, wait_cost);
  json witness = json::array();
  for (const auto& p : r.witness) witness.push_back(labels_of(*graph, p));
  json doc{{"mission", mission_json(mission)},
           {"horizon", horizon},
           {"feasible", r.feasible()},
           {"optimal_cost", r.feasible() ? json(r.optimal_cost) : json(nullptr)},
           {"witness", witness},
           {"explored_states", r.explored_states}};
  emit(doc.dump(2) + "\n", out);
  if (!r.feasible()) {
    fmt::print(stderr, "no plan of at most {} steps visits every target\n", horizon);
    return kInfeasible;
  }
  return kOk;
}

int cmd_validate(const GraphOptions& g, const MissionOptions& m) {
  const auto graph = load_graph(g);
  const Mission mission = build_mission(graph, m);
  json doc{{"nodes", graph->node_count()}, {"edges", graph->edge_count()}, {"mission", mission_json(mission)},
           {"valid", true}};
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Force-based routing of modular agents on weighted graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "modroute 0.1.0");

  GraphOptions graph_opts;
  MissionOptions mission_opts;
  RouterOptions router_opts;
  std::string out;
  std::string rows_out;
  std::size_t trials = 100;
  std::size_t threads = 0;
  std::size_t horizon = 8;
  bool baseline = false;
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;

  auto* run = app.add_subcommand("run", "Route one mission and print the result as JSON");
  add_graph_options(*run, graph_opts);
  add_mission_options(*run, mission_opts);
  add_router_options(*run, router_opts);
  run->add_flag("--baseline", baseline, "Use the non-modular nearest-neighbor baseline");
  run->add_option("--out", out, "Write the JSON here instead of stdout");

  auto* batch = app.add_subcommand("batch", "Compare force-based routing with the baseline over seeded missions");
  add_graph_options(*batch, graph_opts);
  add_mission_options(*batch, mission_opts, true);
  add_router_options(*batch, router_opts);
  batch->add_option("--trials", trials, "Number of missions")->default_val(100)->check(CLI::PositiveNumber);
  batch->add_option("--threads", threads, "Worker threads (0 = all cores)")->default_val(0);
  batch->add_option("--out", out, "Per-trial CSV path");

  auto* sweep = app.add_subcommand("sweep", "Mean force-based cost over an alpha x beta grid on shared missions");
  add_graph_options(*sweep, graph_opts);
  add_mission_options(*sweep, mission_opts, true);
  add_router_options(*sweep, router_opts);
  sweep->add_option("--trials", trials, "Missions per cell")->default_val(100)->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->default_val(0);
  sweep->add_option("--alpha-grid", alpha_grid, "Alpha values (default 0.1,0.3,0.5,0.7,0.9)")->delimiter(',');
  sweep->add_option("--beta-grid", beta_grid, "Beta values (default 0.1,0.3,0.5,0.7,0.9)")->delimiter(',');
  sweep->add_option("--out", out, "Cell CSV path (default stdout)");
  sweep->add_option("--rows-out", rows_out, "Per-run CSV path, with mission hashes");

  auto* oracle = app.add_subcommand("oracle", "Exact optimum of a tiny mission by exhaustive search");
  add_graph_options(*oracle, graph_opts);
  add_mission_options(*oracle, mission_opts);
  oracle->add_option("--horizon", horizon, "Maximum plan length in steps")->default_val(8);
  oracle->add_option("--wait-cost", router_opts.wait_cost, "Cost per waiting agent per step")->default_val(0.0);
  oracle->add_option("--out", out, "Write the JSON here instead of stdout");

  auto* check = app.add_subcommand("validate", "Load a graph and mission and report problems");
  add_graph_options(*check, graph_opts);
  add_mission_options(*check, mission_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*run) return cmd_run(graph_opts, mission_opts, router_opts, out, baseline);
    if (*batch) return cmd_batch(graph_opts, mission_opts, router_opts, trials, threads, out);
    if (*sweep) {
      return cmd_sweep(graph_opts, mission_opts, router_opts, trials, threads, alpha_grid, beta_grid, out, rows_out);
    }
    if (*oracle) return cmd_oracle(graph_opts, mission_opts, horizon, router_opts.wait_cost, out);
    if (*check) return cmd_validate(graph_opts, mission_opts);
  } catch (const CliError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return e.code;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInvalidInput;
  }
  return kOk;
}
