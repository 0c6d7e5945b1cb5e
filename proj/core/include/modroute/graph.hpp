#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modroute {

/// Dense node index in [0, node_count).
using NodeId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised for malformed or inconsistent user input (files, missions, parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure tied to a line of a text input.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable weighted directed graph.
///
/// Stored edges are strictly positive and never self-loops. Every node has
/// an implicit zero-weight self-loop that models waiting; it is not listed in
/// the adjacency. Out-edges and in-edges are kept sorted by neighbor id so
/// iteration order is deterministic.
class Graph {
 public:
  Graph() = default;

  /// Throws InputError on out-of-range endpoints, self-loops, non-positive or
  /// non-finite weights and duplicate (src, dst) pairs. Missing labels default
  /// to the decimal node index.
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// All stored edges ordered by (src, dst).
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Edge> out_edges(NodeId node) const;
  /// Incoming edges of `node`, ordered by src.
  std::span<const Edge> in_edges(NodeId node) const;

  /// Weight of the stored edge (src, dst); 0 for src == dst; nullopt otherwise.
  std::optional<double> edge_weight(NodeId src, NodeId dst) const;
  bool has_edge(NodeId src, NodeId dst) const { return edge_weight(src, dst).has_value(); }

  bool contains(NodeId node) const noexcept { return node < node_count(); }

  const std::string& label(NodeId node) const { return labels_.at(node); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<NodeId> find_label(std::string_view label) const;

 private:
  std::vector<Edge> edges_;          // sorted by (src, dst)
  std::vector<std::size_t> offsets_; // CSR offsets into edges_
  std::vector<Edge> reverse_;        // sorted by (dst, src)
  std::vector<std::size_t> reverse_offsets_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
};

}  // namespace modroute
