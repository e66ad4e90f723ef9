#include "credsim/defenses/brute_force_math.hpp"

#include <stdexcept>

namespace credsim {

double brute_force_success_probability(std::uint64_t attempts_per_window, std::uint64_t windows,
                                       std::uint64_t keyspace) {
  if (keyspace == 0) throw std::invalid_argument("brute_force_success_probability: keyspace must be positive");
  const unsigned __int128 guesses = static_cast<unsigned __int128>(attempts_per_window) * windows;
  if (guesses >= keyspace) return 1.0;
  return static_cast<double>(static_cast<std::uint64_t>(guesses)) / static_cast<double>(keyspace);
}

}  // namespace credsim
