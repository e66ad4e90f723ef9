#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "credsim/authsvc/auth_service.hpp"

namespace credsim {

/// Line protocol for the local login facade. One JSON object per line in:
///   {"tick":0,"sourceIp":7,"username":"user1","password":"x","secondFactor":"none"}
/// one per line out: {"outcome":"WrongPassword"} or {"error":"..."}.
std::string handle_facade_line(AuthService& svc, std::string_view line);

struct FacadeOptions {
  std::filesystem::path socketPath;
  /// Stop after this many requests (0 = serve until `stop` is set).
  std::size_t maxRequests = 0;
};

/// Serves the line protocol on a Unix domain socket, one client at a time.
/// Returns the number of requests answered. Throws std::system_error on
/// socket failures.
std::size_t serve_facade(AuthService& svc, const FacadeOptions& opts, const std::atomic<bool>& stop);

}  // namespace credsim
