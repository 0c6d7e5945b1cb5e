#include "modroute/shortest_paths.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <string>
#include <utility>

namespace modroute {

namespace {

using HeapEntry = std::pair<double, NodeId>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

// Relative slack when matching w(u,v) + dist(v) against dist(u) on the
// shortest-path DAG. Sums taken in different orders may differ in the last
// bits; exact for integer-valued weights.
constexpr double kTieSlack = 1e-12;

bool on_shortest_dag(double w, double dist_v, double dist_u) {
  return std::abs(w + dist_v - dist_u) <= kTieSlack * std::max(1.0, dist_u);
}

// Restrictions used by Yen's spur searches.
struct Bans {
  std::span<const char> nodes;          // nodes[v] != 0: v unusable (may be empty)
  NodeId edge_src = 0;                  // banned edges all leave this node
  std::span<const NodeId> edge_dsts;    // sorted
};

bool node_banned(const Bans& bans, NodeId v) { return !bans.nodes.empty() && bans.nodes[v] != 0; }

bool edge_banned(const Bans& bans, NodeId u, NodeId v) {
  return u == bans.edge_src && std::binary_search(bans.edge_dsts.begin(), bans.edge_dsts.end(), v);
}

// Shortest path src -> dst honoring `bans`; lexicographically smallest node
// sequence among the shortest. Distances to dst are computed on the reverse
// graph, then the path is walked forward taking the smallest admissible
// successor at each node.
std::optional<Path> lexmin_shortest(const Graph& graph, NodeId src, NodeId dst, const Bans& bans) {
  if (node_banned(bans, src) || node_banned(bans, dst)) return std::nullopt;
  if (src == dst) return Path{{src}, 0.0};

  std::vector<double> to_dst(graph.node_count(), kInfinity);
  to_dst[dst] = 0.0;
  MinHeap heap;
  heap.push({0.0, dst});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > to_dst[v]) continue;
    // Every node on a shortest src path is strictly closer than src.
    if (v == src) break;
    for (const Edge& e : graph.in_edges(v)) {
      if (node_banned(bans, e.src) || edge_banned(bans, e.src, v)) continue;
      const double nd = d + e.weight;
      if (nd < to_dst[e.src]) {
        to_dst[e.src] = nd;
        heap.push({nd, e.src});
      }
    }
  }
  if (!std::isfinite(to_dst[src])) return std::nullopt;

  Path path;
  path.nodes.push_back(src);
  NodeId u = src;
  while (u != dst) {
    std::optional<NodeId> next;
    for (const Edge& e : graph.out_edges(u)) {
      if (node_banned(bans, e.dst) || edge_banned(bans, u, e.dst)) continue;
      if (std::isfinite(to_dst[e.dst]) && on_shortest_dag(e.weight, to_dst[e.dst], to_dst[u])) {
        next = e.dst;
        break;
      }
    }
    // The successor must exist: to_dst[u] was relaxed through one of them.
    if (!next || path.nodes.size() > graph.node_count()) {
      throw std::logic_error("shortest path walk lost the DAG at node " + std::to_string(u));
    }
    path.nodes.push_back(*next);
    u = *next;
  }
  path.total_weight = path_weight(graph, path.nodes);
  return path;
}

struct PathLess {
  bool operator()(const Path& a, const Path& b) const { return path_less(a, b); }
};

}  // namespace

ShortestPathTree dijkstra(const Graph& graph, NodeId source) {
  if (!graph.contains(source)) {
    throw std::out_of_range("dijkstra source " + std::to_string(source) + " out of range");
  }
  ShortestPathTree tree;
  tree.source = source;
  tree.distance.assign(graph.node_count(), kInfinity);
  tree.predecessor.assign(graph.node_count(), std::nullopt);
  tree.distance[source] = 0.0;

  MinHeap heap;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > tree.distance[u]) continue;
    for (const Edge& e : graph.out_edges(u)) {
      const double nd = d + e.weight;
      if (nd < tree.distance[e.dst]) {
        tree.distance[e.dst] = nd;
        tree.predecessor[e.dst] = u;
        heap.push({nd, e.dst});
      }
    }
  }
  return tree;
}

bool path_less(const Path& a, const Path& b) {
  if (a.total_weight != b.total_weight) return a.total_weight < b.total_weight;
  return a.nodes < b.nodes;
}

double path_weight(const Graph& graph, std::span<const NodeId> nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto w = graph.edge_weight(nodes[i - 1], nodes[i]);
    if (!w) {
      throw InputError("no edge (" + std::to_string(nodes[i - 1]) + ", " + std::to_string(nodes[i]) +
                       ") at position " + std::to_string(i - 1) + " of path");
    }
    total += *w;
  }
  return total;
}

std::optional<Path> shortest_path(const Graph& graph, NodeId src, NodeId dst) {
  if (!graph.contains(src) || !graph.contains(dst)) {
    throw std::out_of_range("shortest_path endpoint out of range");
  }
  return lexmin_shortest(graph, src, dst, Bans{});
}

PathSet yen_k_shortest(const Graph& graph, NodeId src, NodeId dst, std::size_t k) {
  if (!graph.contains(src) || !graph.contains(dst)) {
    throw std::out_of_range("yen_k_shortest endpoint out of range");
  }
  if (k == 0) throw InputError("k must be at least 1");

  PathSet result{src, dst, {}};
  auto first = lexmin_shortest(graph, src, dst, Bans{});
  if (!first) return result;
  result.paths.push_back(std::move(*first));

  std::set<Path, PathLess> candidates;
  std::vector<char> banned_nodes(graph.node_count(), 0);
  std::vector<NodeId> banned_edges;

  while (result.paths.size() < k) {
    const std::vector<NodeId> prev = result.paths.back().nodes;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      const NodeId spur = prev[i];
      const auto root = std::span<const NodeId>(prev).first(i + 1);

      banned_edges.clear();
      for (const Path& p : result.paths) {
        if (p.nodes.size() > i + 1 && std::equal(root.begin(), root.end(), p.nodes.begin())) {
          banned_edges.push_back(p.nodes[i + 1]);
        }
      }
      std::sort(banned_edges.begin(), banned_edges.end());
      banned_edges.erase(std::unique(banned_edges.begin(), banned_edges.end()), banned_edges.end());

      std::fill(banned_nodes.begin(), banned_nodes.end(), 0);
      for (std::size_t r = 0; r < i; ++r) banned_nodes[root[r]] = 1;

      auto spur_path = lexmin_shortest(graph, spur, dst, Bans{banned_nodes, spur, banned_edges});
      if (!spur_path) continue;

      Path candidate;
      candidate.nodes.assign(root.begin(), root.end());
      candidate.nodes.insert(candidate.nodes.end(), spur_path->nodes.begin() + 1, spur_path->nodes.end());
      candidate.total_weight = path_weight(graph, candidate.nodes);
      if (std::find(result.paths.begin(), result.paths.end(), candidate) == result.paths.end()) {
        candidates.insert(std::move(candidate));
      }
    }
    if (candidates.empty()) break;
    result.paths.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return result;
}

}  // namespace modroute
