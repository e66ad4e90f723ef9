#pragma once

#include <string_view>

#include "credsim/simcore/rng.hpp"

namespace credsim {

enum class SecondFactor { None, ValidOtp, InterceptedOtp };

std::string_view to_string(SecondFactor f);

struct MfaConfig {
  /// Fraction of the population enrolled at generation time.
  double enrollmentRate = 0.0;
  /// Chance that an attacker holding an intercepted OTP gets through.
  double interceptionProbability = 0.0;
  /// Two-step verification for every account regardless of enrollment.
  bool mandatoryTwoStep = false;
};

enum class MfaResult { Pass, Fail };

/// Second-factor check. A legitimate code always passes, no code always fails,
/// an intercepted code passes with interceptionProbability.
/// Throws std::logic_error when the account has no second factor enrolled.
MfaResult mfa_verify(SecondFactor presented, bool enrolled, double interception_probability, RngStream& rng);

}  // namespace credsim
