#include "credsim/defenses/ban_list.hpp"

namespace credsim {

BanState::BanState(BanConfig cfg) : cfg_(cfg) {
  std::vector<std::string> problems;
  if (cfg_.maxRetry == 0) problems.emplace_back("ban.maxRetry: must be > 0");
  if (cfg_.findtime <= 0) problems.emplace_back("ban.findtime: must be > 0");
  if (cfg_.bantime <= 0) problems.emplace_back("ban.bantime: must be > 0");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

void BanState::record_failure(IpId ip, Tick tick) {
  auto& e = entries_[ip];
  if (e.banUntil && tick < *e.banUntil) return;

  const Tick oldest = tick - cfg_.findtime;
  std::erase_if(e.failures, [oldest](Tick t) { return t < oldest; });
  e.failures.push_back(tick);
  if (e.failures.size() >= cfg_.maxRetry) {
    if (!e.banUntil) ++ever_banned_;
    e.banUntil = tick + cfg_.bantime;
    e.failures.clear();
  }
}

bool BanState::is_banned(IpId ip, Tick tick) const {
  const auto it = entries_.find(ip);
  return it != entries_.end() && it->second.banUntil && tick < *it->second.banUntil;
}

std::optional<Tick> BanState::ban_until(IpId ip) const {
  const auto it = entries_.find(ip);
  return it == entries_.end() ? std::nullopt : it->second.banUntil;
}

std::size_t BanState::window_failures(IpId ip, Tick tick) const {
  const auto it = entries_.find(ip);
  if (it == entries_.end()) return 0;
  std::size_t n = 0;
  for (const Tick t : it->second.failures) {
    if (t >= tick - cfg_.findtime && t <= tick) ++n;
  }
  return n;
}

}  // namespace credsim
