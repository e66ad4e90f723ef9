#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace credsim {

/// Identifier written into every report header so a run can be reproduced.
inline constexpr std::string_view kRngFamily = "xoshiro256starstar/splitmix64-pathhash-v1";

/// A named random stream. The draw sequence is a pure function of
/// (rootSeed, path); streams on different paths never share state.
///
/// All derived draws (bounded integers, uniform doubles, Bernoulli, shuffle)
/// use integer arithmetic or exact power-of-two scaling only, so sequences
/// are identical on every IEEE-754 platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t root_seed, std::vector<std::string> path = {});

  RngStream derive(std::string_view label) const;
  RngStream derive(std::uint64_t index) const;

  std::uint64_t root_seed() const noexcept { return root_seed_; }
  const std::vector<std::string>& path() const noexcept { return path_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;

  /// Unbiased uniform integer on [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  bool bernoulli(double p) noexcept;

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  void seed_state(std::uint64_t key) noexcept;

  std::uint64_t root_seed_;
  std::vector<std::string> path_;
  std::array<std::uint64_t, 4> state_{};
};

/// Shuffled index permutation of [0, n).
std::vector<std::uint32_t> shuffled_indices(std::uint32_t n, RngStream& rng);

}  // namespace credsim
