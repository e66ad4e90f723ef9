#include "credsim/attacker/lockout_monte_carlo.hpp"

#include <stdexcept>

#include "credsim/authsvc/auth_service.hpp"
#include "credsim/defenses/brute_force_math.hpp"

namespace credsim {
namespace {

void format_pin(std::uint64_t value, std::uint32_t digits, std::string& out) {
  out.assign(digits, '0');
  for (std::size_t pos = digits; pos > 0 && value > 0; --pos) {
    out[pos - 1] = static_cast<char>('0' + value % 10);
    value /= 10;
  }
}

}  // namespace

LockoutBruteForceResult simulate_lockout_brute_force(const LockoutBruteForceSpec& spec, RngStream rng) {
  if (spec.pinDigits == 0 || spec.pinDigits > 18) throw std::invalid_argument("pinDigits must be in [1,18]");
  if (spec.attemptsPerWindow == 0) throw std::invalid_argument("attemptsPerWindow must be > 0");

  std::uint64_t keyspace = 1;
  for (std::uint32_t i = 0; i < spec.pinDigits; ++i) keyspace *= 10;

  ServiceConfig cfg;
  cfg.defenses.lockout = {true, spec.attemptsPerWindow, spec.windowSeconds};

  LockoutBruteForceResult result;
  result.trials = spec.trials;
  result.analyticProbability = brute_force_success_probability(spec.attemptsPerWindow, spec.windows, keyspace);

  auto pin_rng = rng.derive("pins");
  LoginAttempt attempt;
  attempt.username = "victim";
  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    UserAccount victim;
    victim.id = AccountId{0};
    victim.credential.username = "victim";
    format_pin(pin_rng.uniform_below(keyspace), spec.pinDigits, victim.credential.password);
    AuthService svc(cfg, {victim}, rng.derive("trial").derive(trial));

    std::uint64_t next = 0;
    bool found = false;
    for (std::uint64_t w = 0; w < spec.windows && !found && next < keyspace; ++w) {
      attempt.tick = static_cast<Tick>(w) * spec.windowSeconds;
      for (std::uint32_t a = 0; a <= spec.attemptsPerWindow && next < keyspace; ++a) {
        format_pin(next, spec.pinDigits, attempt.password);
        const auto outcome = svc.authenticate(attempt);
        if (outcome == LoginOutcome::Success) {
          found = true;
          break;
        }
        if (outcome == LoginOutcome::AccountLocked) {
          ++result.lockedRejections;
          break;
        }
        ++next;
      }
    }
    if (found) ++result.successes;
  }
  return result;
}

}  // namespace credsim
