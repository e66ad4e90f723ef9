#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credsim/authsvc/auth_service.hpp"
#include "credsim/population/password_distribution.hpp"
#include "credsim/population/population.hpp"
#include "credsim/simcore/clock.hpp"
#include "credsim/simcore/rng.hpp"

namespace credsim {

enum class AttackStrategy { BruteForce, Dictionary, CredentialStuffing, TweakedStuffing };

std::string_view to_string(AttackStrategy s);
std::optional<AttackStrategy> parse_attack_strategy(std::string_view s);

/// Brute-force guesses are every string of `length` symbols over `alphabet`,
/// enumerated lexicographically. A 6-digit PIN is the default.
struct Keyspace {
  std::string alphabet = "0123456789";
  std::uint32_t length = 6;

  /// Saturates at UINT64_MAX.
  std::uint64_t size() const noexcept;
  std::string guess(std::uint64_t index) const;
};

struct AttackConfig {
  bool enabled = true;
  AttackStrategy strategy = AttackStrategy::CredentialStuffing;
  std::uint32_t ipPoolSize = 1;
  std::uint64_t attemptsPerIpBudget = 1;
  /// Attempts per second per IP. Attempt k of an IP fires at floor(k / pacing).
  double pacing = 1.0;
  /// Each IP's pacing is scaled by a factor drawn uniformly from [1 - j, 1 + j].
  double pacingJitter = 0.0;
  /// Empty means every account of the service.
  std::vector<std::string> targetUsernames;
  /// "generated" (the population's corpus) or a corpus file path.
  std::string corpusRef = "generated";
  /// "default" (the scenario's password distribution) or a distribution file path.
  std::string dictionaryRef = "default";
  Keyspace keyspace;

  /// Throws ConfigError listing every invalid field.
  void validate() const;
};

struct AttackInputs {
  const BreachCorpus* corpus = nullptr;
  /// Dictionary words, already in descending frequency.
  const std::vector<std::string>* dictionary = nullptr;
};

struct PerIpStats {
  IpId ip{};
  std::uint64_t attemptsDelivered = 0;
  std::uint64_t attemptsBlocked = 0;
  std::uint64_t successes = 0;
};

struct AttackReport {
  std::uint64_t totalAttempts = 0;
  std::uint64_t totalSuccesses = 0;
  std::vector<AccountId> compromisedAccountIds;  ///< ascending, unique
  std::uint64_t bannedIpCount = 0;
  std::uint64_t lockedAccountCount = 0;
  std::vector<PerIpStats> perIp;
  std::map<LoginOutcome, std::uint64_t> outcomeHistogram;

  std::uint64_t delivered() const noexcept;
  std::uint64_t blocked() const noexcept;
  double mean_delivered_per_ip() const noexcept;
};

/// Drives the configured strategy against `svc`, round-robin over the IP
/// pool, until the per-IP budgets or the candidate list run out. The clock
/// ends one tick past the last attempt.
///
/// When the service's OTP interception probability is positive the attacker
/// presents intercepted codes; otherwise it presents no second factor.
///
/// Throws std::invalid_argument when a stuffing mode has no corpus or
/// dictionary mode has no word list.
AttackReport run_attack(AuthService& svc, const AttackConfig& cfg, const AttackInputs& inputs, SimClock& clock,
                        RngStream rng);

/// Loads a corpus file of `username,password,sourceTag` rows.
BreachCorpus load_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const BreachCorpus& corpus);

}  // namespace credsim
