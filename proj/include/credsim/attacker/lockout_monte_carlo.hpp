#pragma once

#include <cstdint>

#include "credsim/simcore/rng.hpp"
#include "credsim/types.hpp"

namespace credsim {

struct LockoutBruteForceSpec {
  std::uint64_t trials = 10000;
  std::uint32_t pinDigits = 6;
  std::uint32_t attemptsPerWindow = 3;
  Seconds windowSeconds = 86400;
  std::uint64_t windows = 3650;
};

struct LockoutBruteForceResult {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  /// Extra guesses per window that the lockout turned away.
  std::uint64_t lockedRejections = 0;
  double analyticProbability = 0.0;

  double success_rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

/// Each trial creates a one-account service whose password is a uniformly
/// random PIN, with per-account lockout (attemptsPerWindow failures lock for
/// windowSeconds). The attacker enumerates PINs lexicographically, firing one
/// guess more than the lockout allows at the start of every window; the
/// lockout rejects it and it is retried in the next window.
LockoutBruteForceResult simulate_lockout_brute_force(const LockoutBruteForceSpec& spec, RngStream rng);

}  // namespace credsim
