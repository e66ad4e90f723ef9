#include "credsim/population/account_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace credsim {
namespace {

constexpr std::string_view kHeader = "id,username,password,reuseClass,optInRelatives,optInFamilyTree,mfaEnrolled";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<bool> flag(const std::string& s) {
  if (s == "0") return false;
  if (s == "1") return true;
  return std::nullopt;
}

}  // namespace

void write_accounts(const std::filesystem::path& path, const std::vector<UserAccount>& accounts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write accounts file: " + path.string());
  out << kHeader << '\n';
  for (const auto& a : accounts) {
    out << to_index(a.id) << ',' << a.credential.username << ',' << a.credential.password << ','
        << to_string(a.reuseClass) << ',' << int(a.optInRelatives) << ',' << int(a.optInFamilyTree) << ','
        << int(a.mfaEnrolled) << '\n';
  }
}

std::vector<UserAccount> load_accounts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open accounts file: " + path.string()});
  std::vector<UserAccount> accounts;
  std::vector<std::string> problems;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line_no == 1 && line == kHeader) continue;
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    const auto f = split(line);
    if (f.size() != 7) {
      problems.push_back(where + "expected 7 fields");
      continue;
    }
    std::uint32_t id = 0;
    const auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), id);
    const auto reuse = parse_reuse_class(f[3]);
    const auto rel = flag(f[4]), tree = flag(f[5]), mfa = flag(f[6]);
    if (ec != std::errc{} || ptr != f[0].data() + f[0].size() || !reuse || !rel || !tree || !mfa || f[1].empty()) {
      problems.push_back(where + "malformed account row");
      continue;
    }
    UserAccount a;
    a.id = AccountId{id};
    a.credential = {f[1], f[2]};
    a.reuseClass = *reuse;
    a.optInRelatives = *rel;
    a.optInFamilyTree = *tree;
    a.mfaEnrolled = *mfa;
    accounts.push_back(std::move(a));
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return accounts;
}

}  // namespace credsim
