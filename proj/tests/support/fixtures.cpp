#include "support/fixtures.hpp"

#include "modroute/graph_io.hpp"

namespace modroute::testing {

const char* const kExample1EdgeList = R"(# Two agents (0, 1), two targets (6, 7).
0 2 1.5
0 3 1.5
0 4 1
1 2 1.5 undirected
1 3 1.5 undirected
1 4 1 undirected
2 5 2.5
3 5 2.5
4 5 2
5 6 1 undirected
5 7 1 undirected
)";

const char* const kCorridorEdgeList = R"(# Three feeders merge into the 4-5 trunk, three branches leave it.
1 2 4 undirected
2 4 4 undirected
3 4 4 undirected
4 5 20 undirected
5 6 6 undirected
6 7 6 undirected
5 8 6 undirected
8 9 6 undirected
5 10 6 undirected
10 11 6 undirected
)";

std::shared_ptr<const Graph> example1_graph() {
  static const auto graph = std::make_shared<const Graph>(load_edge_list(kExample1EdgeList));
  return graph;
}

Mission example1_mission() { return make_mission(example1_graph(), {0, 1}, {6, 7}); }

std::shared_ptr<const Graph> corridor_graph() {
  static const auto graph = std::make_shared<const Graph>(load_edge_list(kCorridorEdgeList));
  return graph;
}

Mission corridor_mission() { return mission_from_labels(corridor_graph(), {"1", "2", "3"}, {"7", "9", "11"}); }

Mission mission_from_labels(std::shared_ptr<const Graph> graph, const std::vector<std::string>& starts,
                            const std::vector<std::string>& targets) {
  std::vector<NodeId> s;
  std::vector<NodeId> t;
  for (const auto& label : starts) s.push_back(graph->find_label(label).value());
  for (const auto& label : targets) t.push_back(graph->find_label(label).value());
  return make_mission(std::move(graph), std::move(s), std::move(t));
}

}  // namespace modroute::testing
