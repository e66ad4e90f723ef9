#pragma once

#include "credsim/defenses/ban_list.hpp"
#include "credsim/defenses/breach_alerts.hpp"
#include "credsim/defenses/lockout.hpp"
#include "credsim/defenses/mfa.hpp"
#include "credsim/defenses/password_policy.hpp"
#include "credsim/defenses/rate_limiter.hpp"

namespace credsim {

struct BanSettings {
  bool enabled = false;
  BanConfig config;
};

struct PolicySettings {
  PasswordPolicy policy;
  /// Reject new passwords that appear in the breach corpus for that username.
  bool breachCheck = false;
};

struct DefenseStack {
  BanSettings ban;
  RateLimitConfig rateLimit;
  LockoutConfig lockout;
  PolicySettings policy;
  AlertConfig alerts;
  MfaConfig mfa;
};

}  // namespace credsim
