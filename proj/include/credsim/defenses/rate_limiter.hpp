#pragma once

#include <deque>
#include <unordered_map>

#include "credsim/types.hpp"

namespace credsim {

struct RateLimitConfig {
  bool enabled = false;
  std::uint32_t maxAttempts = 10;
  Seconds windowSeconds = 60;
};

/// Sliding-log limiter: at most maxAttempts admitted attempts per IP in any
/// window (tick - windowSeconds, tick].
class SlidingWindowRateLimiter {
 public:
  explicit SlidingWindowRateLimiter(RateLimitConfig cfg = {});

  /// Returns true and records the attempt when under the limit.
  bool admit(IpId ip, Tick tick);

  std::size_t in_window(IpId ip, Tick tick) const;

 private:
  RateLimitConfig cfg_;
  std::unordered_map<IpId, std::deque<Tick>> log_;
};

}  // namespace credsim
