#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "credsim/population/population.hpp"

namespace credsim::testing_support {

inline std::filesystem::path scenario_path(const std::string& name) {
  return std::filesystem::path(CREDSIM_SOURCE_DIR) / "scenarios" / (name + ".json");
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("credsim-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Accounts user0..user{n-1} with passwords pw0..pw{n-1}.
inline std::vector<UserAccount> simple_accounts(std::uint32_t n) {
  std::vector<UserAccount> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    UserAccount a;
    a.id = AccountId{i};
    a.credential = {username_for(AccountId{i}), "pw" + std::to_string(i)};
    out.push_back(a);
  }
  return out;
}

}  // namespace credsim::testing_support
