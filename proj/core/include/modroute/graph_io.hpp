#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "modroute/graph.hpp"

namespace modroute {

/// Non-fatal notes collected while loading (collapsed parallel edges, dropped
/// self-loops). Pass nullptr to discard them.
using Warnings = std::vector<std::string>;

/// Parses the plain edge-list format.
///
/// One edge per line: `src dst weight [directed|undirected]`; `#` starts a
/// comment. `undirected` lines add both directions. Node tokens are external
/// labels; they are compacted to dense ids, in numeric order when every label
/// is a non-negative integer and in order of first appearance otherwise.
/// A repeated (src, dst) pair with the same weight is merged, a conflicting
/// weight is a ParseError.
Graph load_edge_list(std::string_view text, Warnings* warnings = nullptr);

/// Inverse of load_edge_list: one directed line per stored edge, labels as
/// node tokens, weights in shortest round-trip form.
std::string write_edge_list(const Graph& graph);

/// Parses a GraphML document. Only nodes, edges and the numeric edge
/// attribute named `weight_attr` are read. Undirected edges are expanded into
/// two directed edges; parallel edges collapse to the minimum weight and
/// self-loops are dropped, each with a warning. GraphML node ids become the
/// node labels.
Graph parse_graphml(std::string_view xml, std::string_view weight_attr = "length",
                    Warnings* warnings = nullptr);

Graph load_graphml(const std::filesystem::path& path, std::string_view weight_attr = "length",
                   Warnings* warnings = nullptr);

/// Writes a directed GraphML document carrying `weight_attr` on every edge.
std::string write_graphml(const Graph& graph, std::string_view weight_attr = "length");

/// Reads a whole file, throwing InputError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace modroute
