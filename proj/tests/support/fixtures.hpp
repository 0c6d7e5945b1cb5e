#pragma once

#include <memory>
#include <string>

#include "modroute/graph.hpp"
#include "modroute/mission.hpp"

namespace modroute::testing {

/// Eight-node graph reproducing the worked two-agent example: agents at 0 and
/// 1, targets 6 and 7. Shortest paths 0 -> 6 cost 4, 5, 5 and 0 -> 1 cost 2,
/// 3, 3. Sixteen directed edges.
extern const char* const kExample1EdgeList;

std::shared_ptr<const Graph> example1_graph();
Mission example1_mission();

/// Three agents on a shared-corridor tree with the node numbering of the
/// three-agent waiting example (labels 1..11).
extern const char* const kCorridorEdgeList;

std::shared_ptr<const Graph> corridor_graph();
Mission corridor_mission();

/// Mission built from node labels.
Mission mission_from_labels(std::shared_ptr<const Graph> graph, const std::vector<std::string>& starts,
                            const std::vector<std::string>& targets);

}  // namespace modroute::testing
