#include <gtest/gtest.h>

#include <algorithm>

#include "modroute/baselines.hpp"
#include "modroute/experiments.hpp"
#include "modroute/grid.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace modroute {
namespace {

using testing::example1_graph;
using testing::example1_mission;

TEST(Baseline, SingleAgentShortestPath) {
  const MissionResult r = run_nonmodular_baseline(make_mission(example1_graph(), {0}, {6}));
  EXPECT_TRUE(r.completed);
  EXPECT_EQ(r.total_cost, 4.0);
  EXPECT_EQ(r.per_agent_paths[0], (std::vector<NodeId>{0, 4, 5, 6}));
  EXPECT_EQ(r.cost_model, CostModel::kPerAgent);
}

TEST(Baseline, CoTraversalPaidTwice) {
  const MissionResult r = run_nonmodular_baseline(make_mission(example1_graph(), {4, 4}, {6, 7}));
  EXPECT_TRUE(r.completed);
  ASSERT_FALSE(r.steps.empty());
  EXPECT_EQ(r.steps[0].step_cost, 4.0);  // (4,5) of weight 2, twice
  // Both head for 6 (tie with 7), then both continue to 7.
  EXPECT_EQ(r.total_cost, 10.0);
}

TEST(Baseline, Example1) {
  const MissionResult r = run_nonmodular_baseline(example1_mission());
  EXPECT_TRUE(r.completed);
  // Each agent alone: 4 to reach 6, then 2 more to reach 7.
  EXPECT_EQ(r.total_cost, 12.0);
  EXPECT_EQ(r.per_agent_paths, (std::vector<std::vector<NodeId>>{{0, 4, 5, 6, 5, 7}, {1, 4, 5, 6, 5, 7}}));
  EXPECT_EQ(r.total_cost, testing::solo_plan_cost(*example1_graph(), r.per_agent_paths));
  EXPECT_EQ(r.total_cost, recompute_cost(*example1_graph(), r));
  EXPECT_LT(run_mission(example1_mission(), ForceParams{1, 1, 3}).total_cost, r.total_cost);
}

TEST(Oracle, Example1) {
  const OracleResult r = brute_force_optimal(example1_mission(), 5);
  EXPECT_EQ(r.optimal_cost, 6.0);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(testing::plan_cost(*example1_graph(), r.witness), 6.0);
  EXPECT_GT(r.explored_states, 0u);
}

TEST(Oracle, TargetAtStart) {
  const OracleResult r = brute_force_optimal(make_mission(example1_graph(), {5}, {5}), 3);
  EXPECT_EQ(r.optimal_cost, 0.0);
  EXPECT_TRUE(r.feasible());
}

TEST(Oracle, OutOfHorizonIsInfinite) {
  const OracleResult r = brute_force_optimal(example1_mission(), 2);
  EXPECT_EQ(r.optimal_cost, kInfinity);
  EXPECT_FALSE(r.feasible());
}

TEST(Oracle, LimitsEnforced) {
  EXPECT_THROW(brute_force_optimal(example1_mission(), 13), InputError);
  EXPECT_THROW(brute_force_optimal(make_mission(example1_graph(), {0, 1, 0, 1}, {6}), 4), InputError);
  auto big = std::make_shared<const Graph>(make_grid(GridSpec{4, 4, 0.5, 1}));
  EXPECT_THROW(brute_force_optimal(make_mission(big, {0}, {5}), 4), InputError);
  EXPECT_THROW(brute_force_optimal(make_mission(example1_graph(), {6}, {0}), 4), InputError);
}

TEST(Oracle, WaitCostCharged) {
  // With waits priced, the second agent's idle steps cost something.
  const OracleResult free_wait = brute_force_optimal(make_mission(example1_graph(), {0, 6}, {7}), 5);
  const OracleResult priced = brute_force_optimal(make_mission(example1_graph(), {0, 6}, {7}), 5, 1.0);
  EXPECT_EQ(free_wait.optimal_cost, 2.0);
  EXPECT_GE(priced.optimal_cost, free_wait.optimal_cost);
  EXPECT_EQ(priced.optimal_cost, testing::plan_cost(*example1_graph(), priced.witness, 1.0));
}

class TinyMissions : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(TinyMissions, OracleProperties) {
  const std::uint64_t seed = GetParam();
  Rng rng(seed);
  auto graph = std::make_shared<const Graph>(testing::random_graph(rng, 6 + seed % 3, 0.35, 5));
  const std::size_t n = 1 + seed % 2;
  Mission m;
  try {
    m = generate_random_mission(graph, n, 2, seed);
  } catch (const InputError&) {
    GTEST_SKIP() << "no feasible mission";
  }
  const std::size_t horizon = 6;
  const OracleResult opt = brute_force_optimal(m, horizon);
  if (opt.feasible()) {
    EXPECT_NEAR(testing::plan_cost(*graph, opt.witness), opt.optimal_cost, 1e-9);
    for (const auto& path : opt.witness) {
      for (std::size_t i = 1; i < path.size(); ++i) {
        EXPECT_TRUE(path[i] == path[i - 1] || graph->has_edge(path[i - 1], path[i]));
      }
    }
    for (NodeId t : m.targets) {
      EXPECT_TRUE(std::any_of(opt.witness.begin(), opt.witness.end(),
                              [&](const auto& p) { return std::find(p.begin(), p.end(), t) != p.end(); }));
    }
  }

  // Symmetry under permuting the starts.
  Mission swapped = m;
  std::reverse(swapped.starts.begin(), swapped.starts.end());
  EXPECT_EQ(brute_force_optimal(swapped, horizon).optimal_cost, opt.optimal_cost);

  // The heuristic never beats the optimum within its own horizon.
  const MissionResult r = run_mission(m, ForceParams{});
  if (r.completed && r.steps_taken <= horizon) EXPECT_GE(r.total_cost + 1e-9, opt.optimal_cost);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TinyMissions, ::testing::Range<std::uint64_t>(1, 41));

TEST(Baseline, SingleAgentMatchesAlphaZero) {
  // Unique nearest-neighbor tours need distinct distances; integer-free
  // perturbed weights make ties vanishingly unlikely.
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto graph = std::make_shared<const Graph>(make_grid(GridSpec{5, 5, 0.5, seed}));
    const Mission m = generate_random_mission(graph, 1, 4, seed);
    const MissionResult base = run_nonmodular_baseline(m);
    const MissionResult force = run_mission(m, ForceParams{0.0, 1.0, 5});
    EXPECT_NEAR(base.total_cost, force.total_cost, 1e-9) << "seed " << seed;
  }
}

TEST(Baseline, InvalidMissionThrows) {
  EXPECT_THROW(run_nonmodular_baseline(make_mission(example1_graph(), {6}, {0})), InputError);
}

}  // namespace
}  // namespace modroute
