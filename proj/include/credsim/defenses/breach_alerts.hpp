#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "credsim/population/population.hpp"
#include "credsim/simcore/rng.hpp"

namespace credsim {

struct AlertConfig {
  bool enabled = false;
  double resetProbability = 0.26;
  /// Per risk-tag override of resetProbability. Empty by default.
  std::map<std::string, double> tagResetProbability;
};

/// Accounts whose live credential appears verbatim in the corpus, ascending
/// by id, without duplicates.
std::vector<AccountId> breach_alert_scan(std::span<const UserAccount> accounts, const BreachCorpus& corpus);

struct AlertResponse {
  std::vector<AccountId> reset;
  std::vector<AccountId> ignored;

  std::size_t reset_count() const noexcept { return reset.size(); }
  std::size_t ignored_count() const noexcept { return ignored.size(); }
};

using RiskTagLookup = std::function<std::string_view(AccountId)>;

/// Each warned account independently resets with its (possibly tag-specific)
/// probability; everyone else ignores the warning.
AlertResponse apply_alert_response(std::span<const AccountId> warnings, const AlertConfig& cfg, RngStream& rng,
                                   const RiskTagLookup& tag_of = {});

/// Random 16+ character password with all four character classes.
std::string generate_compliant_password(RngStream& rng, std::size_t min_length = 16);

}  // namespace credsim
