#include "modroute/grid.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "modroute/random.hpp"

namespace modroute {

GridSpec parse_grid_spec(std::string_view text) {
  const auto x = text.find_first_of("xX");
  GridSpec spec;
  auto parse = [&](std::string_view part, std::size_t& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && ptr == part.data() + part.size() && out > 0;
  };
  if (x == std::string_view::npos || !parse(text.substr(0, x), spec.width) ||
      !parse(text.substr(x + 1), spec.height)) {
    throw InputError("grid spec must look like WxH with positive integers, got '" + std::string(text) + "'");
  }
  return spec;
}

Graph make_grid(const GridSpec& spec) {
  if (spec.width == 0 || spec.height == 0) throw InputError("grid dimensions must be positive");
  if (spec.width * spec.height < 2) throw InputError("grid needs at least two nodes");
  if (!(spec.perturbation >= 0.0)) throw InputError("grid perturbation must be non-negative");

  Rng rng(spec.seed);
  const auto id = [&](std::size_t x, std::size_t y) { return static_cast<NodeId>(y * spec.width + x); };
  std::vector<Edge> edges;
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      if (x + 1 < spec.width) {
        const double w = 1.0 + spec.perturbation * unit_uniform(rng);
        edges.push_back({id(x, y), id(x + 1, y), w});
        edges.push_back({id(x + 1, y), id(x, y), w});
      }
      if (y + 1 < spec.height) {
        const double w = 1.0 + spec.perturbation * unit_uniform(rng);
        edges.push_back({id(x, y), id(x, y + 1), w});
        edges.push_back({id(x, y + 1), id(x, y), w});
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(spec.width * spec.height);
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) labels.push_back(std::to_string(x) + "_" + std::to_string(y));
  }
  return Graph(spec.width * spec.height, std::move(edges), std::move(labels));
}

}  // namespace modroute
