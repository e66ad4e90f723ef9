#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace credsim {

/// Simulation time in whole seconds since the scenario epoch.
using Tick = std::int64_t;
using Seconds = std::int64_t;

enum class AccountId : std::uint32_t {};
enum class IpId : std::uint32_t {};

constexpr std::uint32_t to_index(AccountId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t to_index(IpId id) noexcept { return static_cast<std::uint32_t>(id); }

/// Raised when a scenario (or any structured configuration) fails validation.
/// Carries every offending field, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace credsim
