#include "credsim/defenses/breach_alerts.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_set>

namespace credsim {
namespace {

std::string credential_key(std::string_view user, std::string_view password) {
  std::string key;
  key.reserve(user.size() + password.size() + 1);
  key.append(user);
  key.push_back('\0');
  key.append(password);
  return key;
}

constexpr std::string_view kLower = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr std::string_view kDigits = "0123456789";
// No comma, quote or whitespace so generated passwords survive CSV round trips.
constexpr std::string_view kSymbols = "!#$%&()*+-./:;<=>?@[]^_{|}~";

}  // namespace

std::vector<AccountId> breach_alert_scan(std::span<const UserAccount> accounts, const BreachCorpus& corpus) {
  std::unordered_set<std::string> leaked;
  leaked.reserve(corpus.entries.size());
  for (const auto& e : corpus.entries) leaked.insert(credential_key(e.username, e.password));

  std::vector<AccountId> warnings;
  for (const auto& a : accounts) {
    if (leaked.contains(credential_key(a.credential.username, a.credential.password))) warnings.push_back(a.id);
  }
  std::sort(warnings.begin(), warnings.end());
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  return warnings;
}

AlertResponse apply_alert_response(std::span<const AccountId> warnings, const AlertConfig& cfg, RngStream& rng,
                                   const RiskTagLookup& tag_of) {
  AlertResponse out;
  for (const AccountId id : warnings) {
    double p = cfg.resetProbability;
    if (tag_of && !cfg.tagResetProbability.empty()) {
      const auto it = cfg.tagResetProbability.find(std::string(tag_of(id)));
      if (it != cfg.tagResetProbability.end()) p = it->second;
    }
    (rng.bernoulli(p) ? out.reset : out.ignored).push_back(id);
  }
  return out;
}

std::string generate_compliant_password(RngStream& rng, std::size_t min_length) {
  const std::size_t length = std::max<std::size_t>(16, min_length);
  const std::string_view pools[] = {kLower, kUpper, kDigits, kSymbols};
  std::string pw;
  pw.reserve(length);
  for (const auto pool : pools) pw.push_back(pool[rng.uniform_below(pool.size())]);
  while (pw.size() < length) {
    const auto pool = pools[rng.uniform_below(4)];
    pw.push_back(pool[rng.uniform_below(pool.size())]);
  }
  rng.shuffle(std::span(pw.data(), pw.size()));
  return pw;
}

}  // namespace credsim
