#include "modroute/graph.hpp"

#include <algorithm>
#include <cmath>

namespace modroute {

namespace {

std::string describe(const Edge& e) {
  return "(" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ")";
}

std::vector<std::size_t> build_offsets(std::span<const Edge> sorted, std::size_t node_count,
                                       NodeId Edge::*key) {
  std::vector<std::size_t> offsets(node_count + 1, 0);
  for (const Edge& e : sorted) ++offsets[e.*key + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  return offsets;
}

}  // namespace

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : edges_(std::move(edges)), labels_(std::move(labels)) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw InputError("graph too large: " + std::to_string(node_count) + " nodes");
  }
  for (const Edge& e : edges_) {
    if (e.src >= node_count || e.dst >= node_count) {
      throw InputError("edge " + describe(e) + " has an endpoint outside [0, " +
                       std::to_string(node_count) + ")");
    }
    if (e.src == e.dst) {
      throw InputError("edge " + describe(e) + " is a self-loop; self-loops are implicit");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge " + describe(e) + " has non-positive or non-finite weight");
    }
  }

  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst;
  });
  if (dup != edges_.end()) throw InputError("duplicate edge " + describe(*dup));

  offsets_ = build_offsets(edges_, node_count, &Edge::src);

  reverse_ = edges_;
  std::sort(reverse_.begin(), reverse_.end(), [](const Edge& a, const Edge& b) {
    return a.dst != b.dst ? a.dst < b.dst : a.src < b.src;
  });
  reverse_offsets_ = build_offsets(reverse_, node_count, &Edge::dst);

  if (labels_.empty()) {
    labels_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != node_count) {
    throw InputError("label count " + std::to_string(labels_.size()) +
                     " does not match node count " + std::to_string(node_count));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!label_index_.emplace(labels_[i], static_cast<NodeId>(i)).second) {
      throw InputError("duplicate node label '" + labels_[i] + "'");
    }
  }
}

std::span<const Edge> Graph::out_edges(NodeId node) const {
  if (!contains(node)) throw std::out_of_range("node " + std::to_string(node) + " out of range");
  return std::span<const Edge>(edges_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

std::span<const Edge> Graph::in_edges(NodeId node) const {
  if (!contains(node)) throw std::out_of_range("node " + std::to_string(node) + " out of range");
  return std::span<const Edge>(reverse_).subspan(reverse_offsets_[node],
                                                 reverse_offsets_[node + 1] - reverse_offsets_[node]);
}

std::optional<double> Graph::edge_weight(NodeId src, NodeId dst) const {
  if (!contains(src) || !contains(dst)) return std::nullopt;
  if (src == dst) return 0.0;
  auto out = out_edges(src);
  auto it = std::lower_bound(out.begin(), out.end(), dst,
                             [](const Edge& e, NodeId d) { return e.dst < d; });
  if (it == out.end() || it->dst != dst) return std::nullopt;
  return it->weight;
}

std::optional<NodeId> Graph::find_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace modroute
