#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "modroute/graph.hpp"

namespace modroute {

struct GridSpec {
  std::size_t width = 8;
  std::size_t height = 8;
  /// Edge weights are drawn uniformly from [1, 1 + perturbation).
  double perturbation = 0.5;
  std::uint64_t seed = 1;
};

/// Parses "WxH" (e.g. "8x8").
GridSpec parse_grid_spec(std::string_view text);

/// 4-connected grid; each adjacent pair is joined in both directions with one
/// shared seeded weight. Node (x, y) has id y * width + x and label "x_y".
Graph make_grid(const GridSpec& spec);

}  // namespace modroute
