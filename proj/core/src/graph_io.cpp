#include "modroute/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

namespace modroute {

namespace {

std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

bool is_unsigned_integer(std::string_view token) {
  return !token.empty() && token.size() <= 9 &&
         std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

struct RawEdge {
  std::string src;
  std::string dst;
  double weight;
  std::size_t line;  // source position for diagnostics; 0 when unknown
};

// Maps labels to dense ids in the given order and builds the graph.
Graph assemble(const std::vector<std::string>& ordered_labels,
               const std::map<std::pair<std::string, std::string>, double>& weights) {
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t i = 0; i < ordered_labels.size(); ++i) {
    index.emplace(ordered_labels[i], static_cast<NodeId>(i));
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    edges.push_back({index.at(key.first), index.at(key.second), w});
  }
  return Graph(ordered_labels.size(), std::move(edges), ordered_labels);
}

}  // namespace

Graph load_edge_list(std::string_view text, Warnings* warnings) {
  std::vector<RawEdge> raw;
  std::vector<std::string> first_seen;
  std::unordered_map<std::string, bool> seen;

  auto note_label = [&](std::string_view label) {
    auto [it, inserted] = seen.emplace(std::string(label), true);
    if (inserted) first_seen.push_back(it->first);
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto fields = split_fields(line);
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError(line_no, "expected 'src dst weight [directed|undirected]'");
    }
    auto weight = parse_double(fields[2]);
    if (!weight) throw ParseError(line_no, "weight '" + std::string(fields[2]) + "' is not a number");
    if (!(*weight > 0.0) || !std::isfinite(*weight)) {
      throw ParseError(line_no, "weight must be positive and finite");
    }
    bool undirected = false;
    if (fields.size() == 4) {
      if (fields[3] == "undirected") {
        undirected = true;
      } else if (fields[3] != "directed") {
        throw ParseError(line_no, "unknown direction '" + std::string(fields[3]) + "'");
      }
    }
    note_label(fields[0]);
    note_label(fields[1]);
    if (fields[0] == fields[1]) {
      if (warnings) warnings->push_back(fmt::format("line {}: self-loop dropped", line_no));
      continue;
    }
    raw.push_back({std::string(fields[0]), std::string(fields[1]), *weight, line_no});
    if (undirected) raw.push_back({std::string(fields[1]), std::string(fields[0]), *weight, line_no});
  }
  if (raw.empty()) throw InputError("no edges");

  std::map<std::pair<std::string, std::string>, double> weights;
  for (const RawEdge& e : raw) {
    auto [it, inserted] = weights.emplace(std::make_pair(e.src, e.dst), e.weight);
    if (!inserted && it->second != e.weight) {
      throw ParseError(e.line, fmt::format("duplicate edge ({}, {}) with conflicting weight", e.src, e.dst));
    }
  }

  std::vector<std::string> ordered = first_seen;
  if (std::all_of(ordered.begin(), ordered.end(), [](const std::string& s) { return is_unsigned_integer(s); })) {
    std::sort(ordered.begin(), ordered.end(), [](const std::string& a, const std::string& b) {
      return std::stoul(a) < std::stoul(b);
    });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
      if (std::stoul(ordered[i]) == std::stoul(ordered[i - 1])) {
        throw InputError("node labels '" + ordered[i - 1] + "' and '" + ordered[i] +
                         "' denote the same integer");
      }
    }
  }
  return assemble(ordered, weights);
}

std::string write_edge_list(const Graph& graph) {
  std::string out = fmt::format("# {} nodes, {} directed edges\n", graph.node_count(), graph.edge_count());
  for (const std::string& label : graph.labels()) {
    if (label.empty() || label.find_first_of(" \t\r\n#") != std::string::npos) {
      throw InputError("label '" + label + "' cannot be written as an edge-list token");
    }
  }
  for (const Edge& e : graph.edges()) {
    out += fmt::format("{} {} {}\n", graph.label(e.src), graph.label(e.dst), e.weight);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph parse_graphml(std::string_view xml, std::string_view weight_attr, Warnings* warnings) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& err) {
    throw InputError(std::string("unparseable GraphML: ") + err.what());
  }
  auto root = doc.get_child_optional("graphml");
  if (!root) throw InputError("unparseable GraphML: missing <graphml> root");

  std::string key_id;
  std::optional<double> key_default;
  for (const auto& [tag, child] : *root) {
    if (tag != "key") continue;
    const auto name = child.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.name", '/'), "");
    const auto domain = child.get<std::string>("<xmlattr>.for", "all");
    if (name != weight_attr || (domain != "edge" && domain != "all")) continue;
    key_id = child.get<std::string>("<xmlattr>.id", "");
    if (auto def = child.get_optional<std::string>("default")) {
      key_default = parse_double(trim(*def));
      if (!key_default) throw InputError("default for '" + std::string(weight_attr) + "' is not numeric");
    }
    break;
  }

  auto graph_node = root->get_child_optional("graph");
  if (!graph_node) throw InputError("unparseable GraphML: missing <graph> element");
  const bool default_undirected = graph_node->get<std::string>("<xmlattr>.edgedefault", "directed") == "undirected";

  std::vector<std::string> labels;
  std::unordered_map<std::string, bool> declared;
  for (const auto& [tag, child] : *graph_node) {
    if (tag != "node") continue;
    auto id = child.get<std::string>("<xmlattr>.id", "");
    if (id.empty()) throw InputError("GraphML node without id");
    if (!declared.emplace(id, true).second) throw InputError("duplicate GraphML node id '" + id + "'");
    labels.push_back(std::move(id));
  }

  std::map<std::pair<std::string, std::string>, double> weights;
  auto add = [&](const std::string& src, const std::string& dst, double w) {
    auto [it, inserted] = weights.emplace(std::make_pair(src, dst), w);
    if (!inserted) {
      if (warnings && it->second != w) {
        warnings->push_back(fmt::format("parallel edge ({}, {}) collapsed to weight {}", src, dst,
                                        std::min(it->second, w)));
      }
      it->second = std::min(it->second, w);
    }
  };

  std::size_t edge_index = 0;
  for (const auto& [tag, child] : *graph_node) {
    if (tag != "edge") continue;
    const auto src = child.get<std::string>("<xmlattr>.source", "");
    const auto dst = child.get<std::string>("<xmlattr>.target", "");
    const auto name = child.get<std::string>("<xmlattr>.id", fmt::format("#{} ({} -> {})", edge_index, src, dst));
    ++edge_index;
    if (!declared.count(src) || !declared.count(dst)) {
      throw InputError("edge " + name + " references an undeclared node");
    }

    std::optional<std::string> text;
    if (!key_id.empty()) {
      for (const auto& [dtag, data] : child) {
        if (dtag == "data" && data.get<std::string>("<xmlattr>.key", "") == key_id) {
          text = data.get_value<std::string>();
          break;
        }
      }
    }
    double w = 0.0;
    if (text) {
      auto parsed = parse_double(trim(*text));
      if (!parsed) throw InputError("edge " + name + " has non-numeric '" + std::string(weight_attr) + "' value '" + *text + "'");
      w = *parsed;
    } else if (key_default) {
      w = *key_default;
    } else {
      throw InputError("edge " + name + " is missing attribute '" + std::string(weight_attr) + "'");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError("edge " + name + " has non-positive weight");
    }
    if (src == dst) {
      if (warnings) warnings->push_back("self-loop " + name + " dropped");
      continue;
    }

    bool undirected = default_undirected;
    if (auto directed = child.get_optional<std::string>("<xmlattr>.directed")) {
      undirected = (*directed == "false");
    }
    add(src, dst, w);
    if (undirected) add(dst, src, w);
  }
  return assemble(labels, weights);
}

Graph load_graphml(const std::filesystem::path& path, std::string_view weight_attr, Warnings* warnings) {
  return parse_graphml(read_file(path), weight_attr, warnings);
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string write_graphml(const Graph& graph, std::string_view weight_attr) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out += fmt::format("  <key id=\"d0\" for=\"edge\" attr.name=\"{}\" attr.type=\"double\"/>\n",
                     xml_escape(weight_attr));
  out += "  <graph edgedefault=\"directed\">\n";
  for (const std::string& label : graph.labels()) {
    out += fmt::format("    <node id=\"{}\"/>\n", xml_escape(label));
  }
  for (const Edge& e : graph.edges()) {
    out += fmt::format("    <edge source=\"{}\" target=\"{}\"><data key=\"d0\">{}</data></edge>\n",
                       xml_escape(graph.label(e.src)), xml_escape(graph.label(e.dst)), e.weight);
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

}  // namespace modroute
