#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credsim/relgraph/graph.hpp"

namespace credsim {

struct ExposureReport {
  std::vector<AccountId> compromised;        ///< ascending, unique
  std::vector<AccountId> exposedRelatives;   ///< neighbors of compromised, minus compromised
  std::vector<AccountId> exposedFamilyTree;  ///< exposedRelatives that are Family Tree members
  /// |exposedRelatives| / |compromised|; absent when nothing was compromised.
  std::optional<double> amplificationFactor;
  /// Keyed by profile field name; every field is present.
  std::map<std::string, std::uint64_t> fieldExposureCounts;
};

/// One-hop exposure: an attacker controlling an account sees the profile
/// cards of its direct relatives. Throws std::out_of_range for ids outside the graph.
ExposureReport compute_exposure(const RelativesGraph& graph, std::span<const AccountId> compromised);

}  // namespace credsim
