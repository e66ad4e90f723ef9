#pragma once

#include <optional>
#include <unordered_map>

#include "credsim/types.hpp"

namespace credsim {

/// Per-account lockout: lockSeconds after maxFailures consecutive wrong passwords.
struct LockoutConfig {
  bool enabled = false;
  std::uint32_t maxFailures = 3;
  Seconds lockSeconds = 86400;
};

class LockoutTracker {
 public:
  explicit LockoutTracker(LockoutConfig cfg = {});

  /// Returns the lock expiry tick when this failure triggers a lock.
  std::optional<Tick> record_failure(AccountId account, Tick tick);
  void record_success(AccountId account);

  std::size_t accounts_ever_locked() const noexcept { return locked_.size(); }

 private:
  LockoutConfig cfg_;
  std::unordered_map<AccountId, std::uint32_t> consecutive_;
  std::unordered_map<AccountId, std::uint32_t> locked_;
};

}  // namespace credsim
