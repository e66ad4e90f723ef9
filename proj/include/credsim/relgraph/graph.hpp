#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "credsim/population/population.hpp"
#include "credsim/population/profile_card.hpp"
#include "credsim/simcore/rng.hpp"

namespace credsim {

enum class GraphModel { ErdosRenyi, ConfigurationModel };

std::string_view to_string(GraphModel m);
std::optional<GraphModel> parse_graph_model(std::string_view s);

struct GraphSpec {
  bool enabled = false;
  GraphModel model = GraphModel::ErdosRenyi;
  double meanDegree = 0.0;
  /// Probability that an opted-in node shares each optional profile field.
  /// The Family Tree link is shared exactly when the node is a Family Tree member.
  double fieldShareRate = 0.5;
};

struct NodeAttributes {
  bool optInRelatives = false;
  bool familyTree = false;
  FieldMask sharedFields = 0;
};

/// Undirected DNA Relatives graph over a population. Node ids are account
/// ids; only opted-in nodes carry edges.
class RelativesGraph {
 public:
  RelativesGraph() = default;

  /// Builds from an edge list. Throws std::invalid_argument on a self-loop,
  /// an unknown node, an edge touching a non-opted-in node, or Family Tree
  /// membership without opt-in. Duplicate edges collapse.
  static RelativesGraph from_edges(std::vector<NodeAttributes> nodes,
                                   std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::size_t opted_in_count() const noexcept { return opted_in_; }

  const NodeAttributes& attributes(std::uint32_t node) const { return nodes_.at(node); }
  std::span<const std::uint32_t> neighbors(std::uint32_t node) const;
  bool has_edge(std::uint32_t u, std::uint32_t v) const;

  /// Mean degree over opted-in nodes (0 when none).
  double mean_degree() const noexcept;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;

 private:
  std::vector<NodeAttributes> nodes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
  std::size_t opted_in_ = 0;
};

/// Random graph over the population's opted-in accounts.
/// ErdosRenyi: each opted-in pair is connected with p = meanDegree / (m - 1).
/// ConfigurationModel: near-regular degree sequence with mean meanDegree,
/// random stub matching, self-loops and multi-edges erased.
/// Throws ConfigError when meanDegree is negative or not below the opted-in count.
RelativesGraph generate_graph(std::span<const UserAccount> accounts, const GraphSpec& spec, RngStream rng);

}  // namespace credsim
