#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "credsim/relgraph/graph.hpp"

namespace credsim {

/// Malformed graph file; carries the 1-based line number.
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Node file rows: `id,optInRelatives,familyTree,sharedFieldsMask` with 0/1
/// flags and a hex mask. Edge file rows: `u,v`. A header row is optional.
void write_graph(const RelativesGraph& graph, std::ostream& nodes, std::ostream& edges);
void write_graph_files(const RelativesGraph& graph, const std::filesystem::path& nodes_path,
                       const std::filesystem::path& edges_path);

RelativesGraph read_graph(std::istream& nodes, std::istream& edges, const std::string& nodes_name = "nodes",
                          const std::string& edges_name = "edges");
RelativesGraph read_graph_files(const std::filesystem::path& nodes_path, const std::filesystem::path& edges_path);

}  // namespace credsim
