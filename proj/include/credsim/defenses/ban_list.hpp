#pragma once

#include <deque>
#include <optional>
#include <unordered_map>

#include "credsim/types.hpp"

namespace credsim {

struct BanConfig {
  std::uint32_t maxRetry = 3;
  Seconds findtime = 600;
  Seconds bantime = 86400;
};

/// Fail2Ban-style per-IP ban list.
///
/// A failure at `tick` is counted against the window [tick - findtime, tick].
/// When the count reaches maxRetry the IP is banned for [tick, tick + bantime)
/// and its failure history is cleared.
class BanState {
 public:
  explicit BanState(BanConfig cfg = {});

  /// Failures reported for an IP that is already banned at `tick` are ignored.
  void record_failure(IpId ip, Tick tick);

  bool is_banned(IpId ip, Tick tick) const;
  std::optional<Tick> ban_until(IpId ip) const;

  /// Number of distinct IPs that have ever been banned.
  std::size_t ever_banned_count() const noexcept { return ever_banned_; }

  /// Failures currently held for `ip` inside the window ending at `tick`.
  std::size_t window_failures(IpId ip, Tick tick) const;

  const BanConfig& config() const noexcept { return cfg_; }

 private:
  struct Entry {
    std::deque<Tick> failures;
    std::optional<Tick> banUntil;
  };

  BanConfig cfg_;
  std::unordered_map<IpId, Entry> entries_;
  std::size_t ever_banned_ = 0;
};

}  // namespace credsim
