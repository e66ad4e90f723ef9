#include "credsim/relgraph/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace credsim {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view s, int base, const std::string& file, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) s.remove_prefix(2);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw GraphFormatError(file, line, "invalid number '" + std::string(s) + "'");
  }
  return v;
}

bool parse_flag(std::string_view s, const std::string& file, std::size_t line) {
  const auto v = parse_uint(s, 10, file, line);
  if (v > 1) throw GraphFormatError(file, line, "flag must be 0 or 1");
  return v == 1;
}

template <typename F>
void for_each_row(std::istream& in, std::string_view header, F&& on_row) {
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    if (line == 1 && raw == header) continue;
    on_row(std::string_view(raw), line);
  }
}

constexpr std::string_view kNodesHeader = "id,optInRelatives,familyTree,sharedFieldsMask";
constexpr std::string_view kEdgesHeader = "u,v";

}  // namespace

GraphFormatError::GraphFormatError(std::string file, std::size_t line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line) {}

void write_graph(const RelativesGraph& graph, std::ostream& nodes, std::ostream& edges) {
  nodes << kNodesHeader << '\n';
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    const auto& a = graph.attributes(i);
    std::ostringstream mask;
    mask << std::hex << a.sharedFields;
    nodes << i << ',' << (a.optInRelatives ? 1 : 0) << ',' << (a.familyTree ? 1 : 0) << ',' << mask.str() << '\n';
  }
  edges << kEdgesHeader << '\n';
  for (const auto& [u, v] : graph.edge_list()) edges << u << ',' << v << '\n';
}

void write_graph_files(const RelativesGraph& graph, const std::filesystem::path& nodes_path,
                       const std::filesystem::path& edges_path) {
  std::ofstream nodes(nodes_path);
  std::ofstream edges(edges_path);
  if (!nodes || !edges) throw std::runtime_error("cannot write graph files");
  write_graph(graph, nodes, edges);
}

RelativesGraph read_graph(std::istream& nodes_in, std::istream& edges_in, const std::string& nodes_name,
                          const std::string& edges_name) {
  std::map<std::uint64_t, std::pair<NodeAttributes, std::size_t>> rows;
  for_each_row(nodes_in, kNodesHeader, [&](std::string_view row, std::size_t line) {
    const auto f = split(row);
    if (f.size() != 4) throw GraphFormatError(nodes_name, line, "expected id,optInRelatives,familyTree,sharedFieldsMask");
    const auto id = parse_uint(f[0], 10, nodes_name, line);
    if (id > 0xFFFFFFFEull) throw GraphFormatError(nodes_name, line, "node id out of range");
    NodeAttributes a;
    a.optInRelatives = parse_flag(f[1], nodes_name, line);
    a.familyTree = parse_flag(f[2], nodes_name, line);
    const auto mask = parse_uint(f[3], 16, nodes_name, line);
    if (mask > kAllFieldsMask) throw GraphFormatError(nodes_name, line, "sharedFieldsMask has unknown bits");
    a.sharedFields = static_cast<FieldMask>(mask);
    if (a.familyTree && !a.optInRelatives) {
      throw GraphFormatError(nodes_name, line, "familyTree requires optInRelatives");
    }
    if (!a.optInRelatives && a.sharedFields != 0) {
      throw GraphFormatError(nodes_name, line, "node that has not opted in cannot share fields");
    }
    if (!rows.emplace(id, std::pair{a, line}).second) throw GraphFormatError(nodes_name, line, "duplicate node id");
  });

  const std::size_t n = rows.empty() ? 0 : static_cast<std::size_t>(rows.rbegin()->first + 1);
  std::vector<NodeAttributes> nodes(n);
  for (const auto& [id, row] : rows) nodes[id] = row.first;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for_each_row(edges_in, kEdgesHeader, [&](std::string_view row, std::size_t line) {
    const auto f = split(row);
    if (f.size() != 2) throw GraphFormatError(edges_name, line, "expected u,v");
    const auto u = parse_uint(f[0], 10, edges_name, line);
    const auto v = parse_uint(f[1], 10, edges_name, line);
    if (!rows.contains(u) || !rows.contains(v)) throw GraphFormatError(edges_name, line, "edge references unknown node");
    if (u == v) throw GraphFormatError(edges_name, line, "self-loop");
    if (!nodes[u].optInRelatives || !nodes[v].optInRelatives) {
      throw GraphFormatError(edges_name, line, "edge touches a node that has not opted in");
    }
    edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  });
  return RelativesGraph::from_edges(std::move(nodes), edges);
}

RelativesGraph read_graph_files(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw std::runtime_error("cannot open node file: " + nodes_path.string());
  std::ifstream edges(edges_path);
  if (!edges) throw std::runtime_error("cannot open edge file: " + edges_path.string());
  return read_graph(nodes, edges, nodes_path.string(), edges_path.string());
}

}  // namespace credsim
