#include "credsim/defenses/rate_limiter.hpp"

namespace credsim {

SlidingWindowRateLimiter::SlidingWindowRateLimiter(RateLimitConfig cfg) : cfg_(cfg) {
  std::vector<std::string> problems;
  if (cfg_.maxAttempts == 0) problems.emplace_back("rateLimit.maxAttempts: must be > 0");
  if (cfg_.windowSeconds <= 0) problems.emplace_back("rateLimit.windowSeconds: must be > 0");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

bool SlidingWindowRateLimiter::admit(IpId ip, Tick tick) {
  auto& log = log_[ip];
  while (!log.empty() && log.front() <= tick - cfg_.windowSeconds) log.pop_front();
  if (log.size() >= cfg_.maxAttempts) return false;
  log.push_back(tick);
  return true;
}

std::size_t SlidingWindowRateLimiter::in_window(IpId ip, Tick tick) const {
  const auto it = log_.find(ip);
  if (it == log_.end()) return 0;
  std::size_t n = 0;
  for (const Tick t : it->second) {
    if (t > tick - cfg_.windowSeconds && t <= tick) ++n;
  }
  return n;
}

}  // namespace credsim
