#include "credsim/defenses/lockout.hpp"

namespace credsim {

LockoutTracker::LockoutTracker(LockoutConfig cfg) : cfg_(cfg) {
  std::vector<std::string> problems;
  if (cfg_.maxFailures == 0) problems.emplace_back("lockout.maxFailures: must be > 0");
  if (cfg_.lockSeconds <= 0) problems.emplace_back("lockout.lockSeconds: must be > 0");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::optional<Tick> LockoutTracker::record_failure(AccountId account, Tick tick) {
  auto& count = consecutive_[account];
  if (++count < cfg_.maxFailures) return std::nullopt;
  count = 0;
  ++locked_[account];
  return tick + cfg_.lockSeconds;
}

void LockoutTracker::record_success(AccountId account) { consecutive_.erase(account); }

}  // namespace credsim
