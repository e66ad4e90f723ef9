#pragma once

#include <cstdint>

namespace credsim {

/// Success probability of uniform guessing without replacement against a
/// lockout that allows `attempts_per_window` guesses per window:
/// min(1, attempts_per_window * windows / keyspace).
/// Throws std::invalid_argument when keyspace is zero.
double brute_force_success_probability(std::uint64_t attempts_per_window, std::uint64_t windows,
                                       std::uint64_t keyspace);

}  // namespace credsim
