#include "credsim/relgraph/exposure.hpp"

#include <algorithm>
#include <stdexcept>

namespace credsim {

ExposureReport compute_exposure(const RelativesGraph& graph, std::span<const AccountId> compromised) {
  ExposureReport report;
  for (const auto& f : kAllProfileFields) report.fieldExposureCounts[std::string(to_string(f))] = 0;

  enum : std::uint8_t { kUnseen = 0, kCompromised = 1, kExposed = 2 };
  std::vector<std::uint8_t> mark(graph.node_count(), kUnseen);
  for (const auto id : compromised) {
    if (to_index(id) >= graph.node_count()) {
      throw std::out_of_range("compute_exposure: account " + std::to_string(to_index(id)) + " not in graph");
    }
    if (mark[to_index(id)] == kUnseen) report.compromised.push_back(id);
    mark[to_index(id)] = kCompromised;
  }
  std::sort(report.compromised.begin(), report.compromised.end());

  for (const auto id : report.compromised) {
    for (const auto v : graph.neighbors(to_index(id))) {
      if (mark[v] != kUnseen) continue;
      mark[v] = kExposed;
      report.exposedRelatives.push_back(AccountId{v});
    }
  }
  std::sort(report.exposedRelatives.begin(), report.exposedRelatives.end());

  for (const auto id : report.exposedRelatives) {
    const auto& attrs = graph.attributes(to_index(id));
    if (attrs.familyTree) report.exposedFamilyTree.push_back(id);
    for (const auto f : kAllProfileFields) {
      if (attrs.sharedFields & field_bit(f)) ++report.fieldExposureCounts[std::string(to_string(f))];
    }
  }

  if (!report.compromised.empty()) {
    report.amplificationFactor =
        static_cast<double>(report.exposedRelatives.size()) / static_cast<double>(report.compromised.size());
  }
  return report;
}

}  // namespace credsim
