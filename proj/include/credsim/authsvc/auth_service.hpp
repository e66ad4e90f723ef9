#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "credsim/defenses/defense_stack.hpp"
#include "credsim/population/population.hpp"
#include "credsim/simcore/rng.hpp"

namespace credsim {

struct LoginAttempt {
  Tick tick = 0;
  IpId sourceIp{};
  std::string username;
  std::string password;
  SecondFactor secondFactorPresented = SecondFactor::None;
};

enum class LoginOutcome {
  Success,
  WrongPassword,
  UnknownUser,
  IpBanned,
  RateLimited,
  AccountLocked,
  MfaRequired,
  MfaFailed,
  ResetRequired,
};

inline constexpr std::size_t kLoginOutcomeCount = 9;

std::string_view to_string(LoginOutcome o);
std::optional<LoginOutcome> parse_login_outcome(std::string_view s);

struct ServiceConfig {
  DefenseStack defenses;
};

enum class ResetStatus { Active, PolicyRejected };

struct ResetResult {
  ResetStatus status = ResetStatus::Active;
  std::vector<PolicyViolation> reasons;
};

/// Simulated login endpoint. Every attempt runs through a fixed pipeline and
/// stops at the first failing stage:
///   1. IP ban  2. rate limit  3. account exists  4. account state
///   5. password  6. second factor
/// Failures at stages 3-5 feed the ban list; wrong passwords feed lockout.
///
/// Owned by one replication; movable between threads but not shareable.
class AuthService {
 public:
  AuthService(ServiceConfig cfg, std::vector<UserAccount> accounts, RngStream rng);

  /// Enables the breach check of complete_reset against this corpus.
  void set_breach_corpus(const BreachCorpus& corpus);

  LoginOutcome authenticate(const LoginAttempt& attempt);

  /// Attempts that arrive within one tick. The ban list is consulted as it
  /// stood at the start of the tick, so attempts already in flight when a ban
  /// fires are still delivered. All attempts must share the same tick.
  std::vector<LoginOutcome> authenticate_batch(std::span<const LoginAttempt> attempts);

  /// Moves every Active account to ResetRequired; returns how many moved.
  std::size_t force_reset_all();

  /// Requires the account to be in ResetRequired (std::logic_error otherwise).
  ResetResult complete_reset(AccountId id, std::string_view new_password);

  /// Idempotent. Throws std::out_of_range for an unknown account.
  const UserAccount& enroll_mfa(AccountId id);

  /// Puts an account into ResetRequired regardless of its current state.
  void require_reset(AccountId id);

  /// Resets each account in `ids` to a fresh random policy-compliant password
  /// that is absent from the breach corpus. Returns the number reset.
  std::size_t reset_with_generated_passwords(std::span<const AccountId> ids, RngStream& rng);

  std::optional<AccountId> find(std::string_view username) const;
  const UserAccount& account(AccountId id) const;
  std::span<const UserAccount> accounts() const noexcept { return accounts_; }
  const ServiceConfig& config() const noexcept { return cfg_; }

  bool is_ip_banned(IpId ip, Tick tick) const;
  std::size_t banned_ip_count() const noexcept;
  std::size_t locked_account_count() const noexcept;

  bool second_factor_required(const UserAccount& a) const noexcept;

 private:
  LoginOutcome process(const LoginAttempt& attempt, bool banned_at_admission);
  void record_pipeline_failure(const LoginAttempt& attempt);
  UserAccount& mutable_account(AccountId id);
  bool breached_for(const std::string& username, std::string_view password) const;

  ServiceConfig cfg_;
  std::vector<UserAccount> accounts_;
  std::unordered_map<std::string, AccountId> by_username_;
  std::unordered_map<std::string, std::unordered_set<std::string>> breached_;
  BanState bans_;
  SlidingWindowRateLimiter limiter_;
  LockoutTracker lockout_;
  RngStream mfa_rng_;
};

}  // namespace credsim
