#include "credsim/authsvc/auth_service.hpp"

#include <array>
#include <stdexcept>

namespace credsim {
namespace {

constexpr std::array<std::string_view, kLoginOutcomeCount> kOutcomeNames = {
    "Success",       "WrongPassword", "UnknownUser", "IpBanned",      "RateLimited",
    "AccountLocked", "MfaRequired",   "MfaFailed",   "ResetRequired",
};

}  // namespace

std::string_view to_string(LoginOutcome o) { return kOutcomeNames[static_cast<std::size_t>(o)]; }

std::optional<LoginOutcome> parse_login_outcome(std::string_view s) {
  for (std::size_t i = 0; i < kOutcomeNames.size(); ++i) {
    if (kOutcomeNames[i] == s) return static_cast<LoginOutcome>(i);
  }
  return std::nullopt;
}

AuthService::AuthService(ServiceConfig cfg, std::vector<UserAccount> accounts, RngStream rng)
    : cfg_(std::move(cfg)),
      accounts_(std::move(accounts)),
      bans_(cfg_.defenses.ban.config),
      limiter_(cfg_.defenses.rateLimit),
      lockout_(cfg_.defenses.lockout),
      mfa_rng_(rng.derive("mfa")) {
  cfg_.defenses.policy.policy.validate();
  by_username_.reserve(accounts_.size());
  for (std::size_t i = 0; i < accounts_.size(); ++i) {
    if (to_index(accounts_[i].id) != i) throw std::invalid_argument("AuthService: account ids must equal their index");
    if (!by_username_.emplace(accounts_[i].credential.username, accounts_[i].id).second) {
      throw std::invalid_argument("AuthService: duplicate username " + accounts_[i].credential.username);
    }
  }
}

void AuthService::set_breach_corpus(const BreachCorpus& corpus) {
  breached_.clear();
  for (const auto& e : corpus.entries) breached_[e.username].insert(e.password);
}

bool AuthService::breached_for(const std::string& username, std::string_view password) const {
  const auto it = breached_.find(username);
  return it != breached_.end() && it->second.contains(std::string(password));
}

bool AuthService::second_factor_required(const UserAccount& a) const noexcept {
  return a.mfaEnrolled || cfg_.defenses.mfa.mandatoryTwoStep;
}

LoginOutcome AuthService::authenticate(const LoginAttempt& attempt) {
  const bool banned = cfg_.defenses.ban.enabled && bans_.is_banned(attempt.sourceIp, attempt.tick);
  return process(attempt, banned);
}

std::vector<LoginOutcome> AuthService::authenticate_batch(std::span<const LoginAttempt> attempts) {
  std::vector<bool> banned(attempts.size(), false);
  for (std::size_t i = 0; i < attempts.size(); ++i) {
    if (attempts[i].tick != attempts.front().tick) {
      throw std::invalid_argument("authenticate_batch: attempts must share one tick");
    }
    banned[i] = cfg_.defenses.ban.enabled && bans_.is_banned(attempts[i].sourceIp, attempts[i].tick);
  }
  std::vector<LoginOutcome> out;
  out.reserve(attempts.size());
  for (std::size_t i = 0; i < attempts.size(); ++i) out.push_back(process(attempts[i], banned[i]));
  return out;
}

void AuthService::record_pipeline_failure(const LoginAttempt& attempt) {
  if (cfg_.defenses.ban.enabled) bans_.record_failure(attempt.sourceIp, attempt.tick);
}

LoginOutcome AuthService::process(const LoginAttempt& attempt, bool banned_at_admission) {
  const auto& d = cfg_.defenses;

  if (banned_at_admission) return LoginOutcome::IpBanned;
  if (d.rateLimit.enabled && !limiter_.admit(attempt.sourceIp, attempt.tick)) return LoginOutcome::RateLimited;

  const auto found = by_username_.find(attempt.username);
  if (found == by_username_.end()) {
    record_pipeline_failure(attempt);
    return LoginOutcome::UnknownUser;
  }
  auto& acct = accounts_[to_index(found->second)];

  if (const auto* locked = std::get_if<account_state::Locked>(&acct.state)) {
    if (attempt.tick < locked->until) {
      record_pipeline_failure(attempt);
      return LoginOutcome::AccountLocked;
    }
    acct.state = account_state::Active{};
  }
  if (std::holds_alternative<account_state::ResetRequired>(acct.state)) {
    record_pipeline_failure(attempt);
    return LoginOutcome::ResetRequired;
  }

  if (attempt.password != acct.credential.password) {
    record_pipeline_failure(attempt);
    if (d.lockout.enabled) {
      if (const auto until = lockout_.record_failure(acct.id, attempt.tick)) {
        acct.state = account_state::Locked{*until};
      }
    }
    return LoginOutcome::WrongPassword;
  }

  if (second_factor_required(acct)) {
    if (attempt.secondFactorPresented == SecondFactor::None) return LoginOutcome::MfaRequired;
    if (mfa_verify(attempt.secondFactorPresented, true, d.mfa.interceptionProbability, mfa_rng_) ==
        MfaResult::Fail) {
      return LoginOutcome::MfaFailed;
    }
  }

  if (d.lockout.enabled) lockout_.record_success(acct.id);
  acct.lastLogin = attempt.tick;
  return LoginOutcome::Success;
}

std::size_t AuthService::force_reset_all() {
  std::size_t moved = 0;
  for (auto& a : accounts_) {
    if (std::holds_alternative<account_state::Active>(a.state)) {
      a.state = account_state::ResetRequired{};
      ++moved;
    }
  }
  return moved;
}

ResetResult AuthService::complete_reset(AccountId id, std::string_view new_password) {
  auto& acct = mutable_account(id);
  if (!std::holds_alternative<account_state::ResetRequired>(acct.state)) {
    throw std::logic_error("complete_reset: account " + std::to_string(to_index(id)) + " is not awaiting a reset");
  }
  const auto& settings = cfg_.defenses.policy;
  ResetResult result;
  result.reasons = check_policy(new_password, settings.policy).reasons;
  if (settings.breachCheck && breached_for(acct.credential.username, new_password)) {
    result.reasons.push_back(PolicyViolation::KnownBreached);
  }
  if (!result.reasons.empty()) {
    result.status = ResetStatus::PolicyRejected;
    return result;
  }
  acct.credential.password = std::string(new_password);
  acct.state = account_state::Active{};
  return result;
}

const UserAccount& AuthService::enroll_mfa(AccountId id) {
  auto& acct = mutable_account(id);
  acct.mfaEnrolled = true;
  return acct;
}

void AuthService::require_reset(AccountId id) { mutable_account(id).state = account_state::ResetRequired{}; }

std::size_t AuthService::reset_with_generated_passwords(std::span<const AccountId> ids, RngStream& rng) {
  std::size_t done = 0;
  for (const AccountId id : ids) {
    require_reset(id);
    const auto& user = account(id).credential.username;
    for (;;) {
      const auto pw = generate_compliant_password(rng, cfg_.defenses.policy.policy.minLength);
      if (breached_for(user, pw)) continue;
      if (complete_reset(id, pw).status == ResetStatus::Active) break;
    }
    ++done;
  }
  return done;
}

std::optional<AccountId> AuthService::find(std::string_view username) const {
  const auto it = by_username_.find(std::string(username));
  return it == by_username_.end() ? std::nullopt : std::optional(it->second);
}

const UserAccount& AuthService::account(AccountId id) const {
  if (to_index(id) >= accounts_.size()) throw std::out_of_range("unknown account " + std::to_string(to_index(id)));
  return accounts_[to_index(id)];
}

UserAccount& AuthService::mutable_account(AccountId id) {
  if (to_index(id) >= accounts_.size()) throw std::out_of_range("unknown account " + std::to_string(to_index(id)));
  return accounts_[to_index(id)];
}

bool AuthService::is_ip_banned(IpId ip, Tick tick) const {
  return cfg_.defenses.ban.enabled && bans_.is_banned(ip, tick);
}

std::size_t AuthService::banned_ip_count() const noexcept { return bans_.ever_banned_count(); }

std::size_t AuthService::locked_account_count() const noexcept { return lockout_.accounts_ever_locked(); }

}  // namespace credsim
