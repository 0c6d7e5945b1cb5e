#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modroute/graph.hpp"

namespace modroute {

struct ShortestPathTree {
  NodeId source = 0;
  std::vector<double> distance;                  // kInfinity when unreachable
  std::vector<std::optional<NodeId>> predecessor;  // nullopt for the source and unreachable nodes
};

/// Single-source shortest paths over the stored (positive) edges.
ShortestPathTree dijkstra(const Graph& graph, NodeId source);

/// Loopless node sequence with its total edge weight.
struct Path {
  std::vector<NodeId> nodes;
  double total_weight = 0.0;

  NodeId origin() const { return nodes.front(); }
  NodeId destination() const { return nodes.back(); }
  std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  friend bool operator==(const Path&, const Path&) = default;
};

/// The deterministic path order used everywhere: by weight, then
/// lexicographically by node sequence.
bool path_less(const Path& a, const Path& b);

struct PathSet {
  NodeId origin = 0;
  NodeId destination = 0;
  std::vector<Path> paths;  // ascending under path_less, pairwise distinct
};

/// Sum of edge weights along `nodes`, accumulated from the first node
/// forward. 0 for a single node. Consecutive equal nodes are waits and cost 0.
/// Throws InputError when a consecutive pair is not an edge.
double path_weight(const Graph& graph, std::span<const NodeId> nodes);

/// Shortest path from src to dst; among equal-weight shortest paths the
/// lexicographically smallest node sequence. nullopt when unreachable.
std::optional<Path> shortest_path(const Graph& graph, NodeId src, NodeId dst);

/// Up to k shortest loopless paths (Yen's deviation algorithm), ordered by
/// path_less. Returns fewer when fewer exist; empty when dst is unreachable.
/// src == dst yields the single path [src] of weight 0.
PathSet yen_k_shortest(const Graph& graph, NodeId src, NodeId dst, std::size_t k);

}  // namespace modroute
