#include "credsim/relgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace credsim {

std::string_view to_string(GraphModel m) {
  return m == GraphModel::ErdosRenyi ? "ErdosRenyi" : "ConfigurationModel";
}

std::optional<GraphModel> parse_graph_model(std::string_view s) {
  if (s == "ErdosRenyi") return GraphModel::ErdosRenyi;
  if (s == "ConfigurationModel") return GraphModel::ConfigurationModel;
  return std::nullopt;
}

RelativesGraph RelativesGraph::from_edges(std::vector<NodeAttributes> nodes,
                                          std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  RelativesGraph g;
  g.nodes_ = std::move(nodes);
  const std::size_t n = g.nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = g.nodes_[i];
    if (a.familyTree && !a.optInRelatives) {
      throw std::invalid_argument("node " + std::to_string(i) + ": Family Tree member without DNA Relatives opt-in");
    }
    if (a.optInRelatives) ++g.opted_in_;
  }

  std::vector<std::size_t> degree(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge references unknown node");
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (!g.nodes_[u].optInRelatives || !g.nodes_[v].optInRelatives) {
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " touches a node that has not opted in");
    }
    ++degree[u];
    ++degree[v];
  }

  std::vector<std::size_t> start(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) start[i + 1] = start[i] + degree[i];
  std::vector<std::uint32_t> adj(start[n]);
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& [u, v] : edges) {
    adj[fill[u]++] = v;
    adj[fill[v]++] = u;
  }

  g.offsets_.assign(n + 1, 0);
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = adj.begin() + static_cast<std::ptrdiff_t>(start[i]);
    const auto e = adj.begin() + static_cast<std::ptrdiff_t>(start[i + 1]);
    std::sort(b, e);
    const auto last = std::unique(b, e);
    for (auto it = b; it != last; ++it) adj[out++] = *it;
    g.offsets_[i + 1] = out;
  }
  adj.resize(out);
  g.neighbors_ = std::move(adj);
  return g;
}

std::span<const std::uint32_t> RelativesGraph::neighbors(std::uint32_t node) const {
  if (node >= nodes_.size()) throw std::out_of_range("node " + std::to_string(node) + " not in graph");
  return std::span(neighbors_).subspan(offsets_[node], offsets_[node + 1] - offsets_[node]);
}

bool RelativesGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double RelativesGraph::mean_degree() const noexcept {
  return opted_in_ == 0 ? 0.0 : static_cast<double>(neighbors_.size()) / static_cast<double>(opted_in_);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> RelativesGraph::edge_list() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edge_count());
  for (std::uint32_t u = 0; u < nodes_.size(); ++u) {
    for (const auto v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

RelativesGraph generate_graph(std::span<const UserAccount> accounts, const GraphSpec& spec, RngStream rng) {
  std::vector<NodeAttributes> nodes(accounts.size());
  std::vector<std::uint32_t> opted;
  auto field_rng = rng.derive("fields");
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    const auto& a = accounts[i];
    if (to_index(a.id) != i) throw std::invalid_argument("generate_graph: account ids must equal their index");
    auto& node = nodes[i];
    node.optInRelatives = a.optInRelatives;
    node.familyTree = a.optInFamilyTree;
    if (!a.optInRelatives) continue;
    opted.push_back(static_cast<std::uint32_t>(i));
    for (const auto f : kAllProfileFields) {
      if (f == ProfileField::FamilyTreeLink) continue;
      if (field_rng.bernoulli(spec.fieldShareRate)) node.sharedFields |= field_bit(f);
    }
    if (node.familyTree) node.sharedFields |= field_bit(ProfileField::FamilyTreeLink);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const std::size_t m = opted.size();
  if (!spec.enabled || m == 0) return RelativesGraph::from_edges(std::move(nodes), edges);

  std::vector<std::string> problems;
  if (!(spec.meanDegree >= 0.0) || !std::isfinite(spec.meanDegree)) problems.emplace_back("graph.meanDegree: must be >= 0");
  else if (spec.meanDegree >= static_cast<double>(m)) {
    problems.push_back("graph.meanDegree: must be below the opted-in count " + std::to_string(m));
  }
  if (!(spec.fieldShareRate >= 0.0 && spec.fieldShareRate <= 1.0)) {
    problems.emplace_back("graph.fieldShareRate: must be in [0,1]");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));

  auto edge_rng = rng.derive("edges");
  if (spec.model == GraphModel::ErdosRenyi) {
    if (m >= 2 && spec.meanDegree > 0.0) {
      const double p = spec.meanDegree / static_cast<double>(m - 1);
      const bool always = p >= 1.0;
      const auto threshold = always ? 0 : static_cast<std::uint64_t>(std::ldexp(p, 64));
      edges.reserve(static_cast<std::size_t>(spec.meanDegree * static_cast<double>(m) / 2.0 * 1.05) + 16);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          if (always || edge_rng.next_u64() < threshold) edges.emplace_back(opted[i], opted[j]);
        }
      }
    }
  } else {
    const auto base = static_cast<std::uint64_t>(std::floor(spec.meanDegree));
    const double frac = spec.meanDegree - static_cast<double>(base);
    std::vector<std::uint32_t> stubs;
    stubs.reserve(static_cast<std::size_t>((spec.meanDegree + 1.0) * static_cast<double>(m)));
    for (const auto node : opted) {
      const auto d = base + (edge_rng.bernoulli(frac) ? 1 : 0);
      for (std::uint64_t k = 0; k < d; ++k) stubs.push_back(node);
    }
    if (stubs.size() % 2 == 1) stubs.push_back(opted[edge_rng.uniform_below(m)]);
    edge_rng.shuffle(std::span(stubs));
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      if (stubs[k] != stubs[k + 1]) edges.emplace_back(stubs[k], stubs[k + 1]);
    }
  }
  return RelativesGraph::from_edges(std::move(nodes), edges);
}

}  // namespace credsim
