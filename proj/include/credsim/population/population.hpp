#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "credsim/population/password_distribution.hpp"
#include "credsim/simcore/rng.hpp"
#include "credsim/types.hpp"

namespace credsim {

struct ScenarioConfig;

enum class ReuseClass { ExactReuse, TweakedReuse, Unique };

std::string_view to_string(ReuseClass c);
std::optional<ReuseClass> parse_reuse_class(std::string_view s);

struct Credential {
  std::string username;
  std::string password;

  friend bool operator==(const Credential&, const Credential&) = default;
};

namespace account_state {
struct Active {
  friend bool operator==(Active, Active) = default;
};
struct Locked {
  Tick until = 0;
  friend bool operator==(Locked, Locked) = default;
};
struct ResetRequired {
  friend bool operator==(ResetRequired, ResetRequired) = default;
};
}  // namespace account_state

using AccountState =
    std::variant<account_state::Active, account_state::Locked, account_state::ResetRequired>;

struct UserAccount {
  AccountId id{};
  Credential credential;
  ReuseClass reuseClass = ReuseClass::Unique;
  bool optInRelatives = false;
  bool optInFamilyTree = false;
  bool mfaEnrolled = false;
  AccountState state = account_state::Active{};
  std::optional<Tick> lastLogin;
  /// Optional risk category used by tag-specific alert response rates.
  std::string riskTag;
};

struct CorpusEntry {
  std::string username;
  std::string password;
  std::string sourceTag;
};

struct BreachCorpus {
  std::vector<CorpusEntry> entries;
};

inline constexpr std::string_view kReuseSourceTag = "prior-leak";
inline constexpr std::string_view kTweakSourceTag = "prior-leak-tweaked";
inline constexpr std::string_view kNoiseSourceTag = "unrelated-leak";

struct PopulationSpec {
  std::uint32_t size = 0;
  double reuseRate = 0.0;
  double tweakRate = 0.0;
  double optInRelativesRate = 0.0;
  double optInFamilyTreeRate = 0.0;
  double mfaEnrollmentRate = 0.0;
  std::uint32_t noiseEntries = 0;
};

struct Population {
  std::vector<UserAccount> accounts;
  BreachCorpus corpus;
};

/// Exact-count assignment: round(n * rate) accounts receive each attribute,
/// chosen through a seeded shuffle. Family Tree membership is drawn only from
/// accounts already opted into DNA Relatives.
Population generate_population(const PopulationSpec& spec, const PasswordDistribution& dist, RngStream rng);
Population generate_population(const ScenarioConfig& cfg, RngStream rng);

std::string username_for(AccountId id);

/// Number of accounts receiving an attribute assigned at `rate`.
std::uint32_t exact_count(std::uint32_t n, double rate);

/// Re-checks the corpus and opt-in invariants. Returns a list of violations
/// (empty when the population is sound).
std::vector<std::string> check_population_invariants(const std::vector<UserAccount>& accounts,
                                                     const BreachCorpus& corpus);

}  // namespace credsim
