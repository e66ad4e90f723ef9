#include "credsim/population/password_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <map>
#include <set>
#include <sstream>

#include "credsim/types.hpp"

namespace credsim {
namespace {

constexpr double kMassTolerance = 1e-12;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError({"line " + std::to_string(line_no) + ": not a number: '" + s + "'"});
  }
}

// Normalized CDFs are shared across copies of the same tail parameters.
std::shared_ptr<const std::vector<double>> zipf_cdf(const ZipfTail& tail) {
  static std::mutex mu;
  static std::map<std::pair<double, std::uint32_t>, std::shared_ptr<const std::vector<double>>> cache;
  const std::lock_guard lock(mu);
  auto& slot = cache[{tail.exponent, tail.vocabulary}];
  if (!slot) {
    std::vector<double> cdf(tail.vocabulary);
    double acc = 0.0;
    for (std::uint32_t k = 1; k <= tail.vocabulary; ++k) {
      acc += tail.exponent == 1.0 ? 1.0 / k : std::pow(static_cast<double>(k), -tail.exponent);
      cdf[k - 1] = acc;
    }
    for (auto& v : cdf) v /= acc;
    cdf.back() = 1.0;
    slot = std::make_shared<const std::vector<double>>(std::move(cdf));
  }
  return slot;
}

}  // namespace

PasswordDistribution::PasswordDistribution(std::vector<HeadEntry> head, ZipfTail tail)
    : head_(std::move(head)), tail_(tail) {
  std::vector<std::string> problems;
  std::set<std::string> seen;
  double sum = 0.0;
  for (const auto& e : head_) {
    if (e.password.empty()) problems.push_back("head: empty password");
    if (!(e.probability > 0.0)) problems.push_back("head: non-positive probability for '" + e.password + "'");
    if (!seen.insert(e.password).second) problems.push_back("head: duplicate password '" + e.password + "'");
    sum += e.probability;
    head_cdf_.push_back(sum);
  }
  if (sum > 1.0 + kMassTolerance) problems.push_back("head: probabilities sum to more than 1");
  tail_mass_ = std::max(0.0, 1.0 - sum);
  if (tail_mass_ > 0.0) {
    if (tail_.vocabulary == 0) problems.push_back("tail: vocabulary must be positive when tail mass > 0");
    if (!(tail_.exponent >= 0.0) || !std::isfinite(tail_.exponent)) problems.push_back("tail: exponent must be >= 0");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  if (tail_mass_ > 0.0) tail_cdf_ = zipf_cdf(tail_);
}

PasswordDistribution PasswordDistribution::table1() {
  return PasswordDistribution(
      {
          {"123456", 0.00296},
          {"a123456", 0.00213},
          {"123456a", 0.00125},
          {"5201314", 0.00121},
          {"111111", 0.00118},
          {"woani1314", 0.00101},
          {"qq123456", 0.00074},
          {"123123", 0.00073},
          {"000000", 0.00073},
          {"1qaz2wsx", 0.00070},
      },
      ZipfTail{});
}

PasswordDistribution PasswordDistribution::parse(std::istream& in) {
  std::vector<HeadEntry> head;
  ZipfTail tail;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> problems;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() == 3 && fields[0] == "zipf") {
      tail.exponent = parse_double(fields[1], line_no);
      const double v = parse_double(fields[2], line_no);
      if (v < 0 || v != std::floor(v) || v > 4e9) {
        problems.push_back("line " + std::to_string(line_no) + ": vocabulary must be a non-negative integer");
      } else {
        tail.vocabulary = static_cast<std::uint32_t>(v);
      }
      continue;
    }
    if (fields.size() != 2) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'password,probability'");
      continue;
    }
    head.push_back({fields[0], parse_double(fields[1], line_no)});
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return PasswordDistribution(std::move(head), tail);
}

PasswordDistribution PasswordDistribution::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open password distribution file: " + path.string()});
  return parse(in);
}

PasswordDistribution PasswordDistribution::resolve(const std::string& id, const std::filesystem::path& base_dir) {
  if (id == "table1") return table1();
  std::filesystem::path p(id);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return load(p);
}

std::string PasswordDistribution::sample(RngStream& rng) const {
  const double u = rng.uniform01();
  if (!head_cdf_.empty() && u < head_cdf_.back()) {
    const auto it = std::upper_bound(head_cdf_.begin(), head_cdf_.end(), u);
    return head_[static_cast<std::size_t>(it - head_cdf_.begin())].password;
  }
  if (!tail_cdf_) return head_.back().password;  // only reachable through rounding at u ~ 1
  const double v = rng.uniform01();
  const auto it = std::upper_bound(tail_cdf_->begin(), tail_cdf_->end(), v);
  const auto rank = static_cast<std::uint32_t>(std::min<std::size_t>(it - tail_cdf_->begin(), tail_cdf_->size() - 1)) + 1;
  return tail_token(rank);
}

double PasswordDistribution::tail_rank_probability(std::uint32_t rank) const {
  if (!tail_cdf_ || rank == 0 || rank > tail_cdf_->size()) return 0.0;
  const auto& cdf = *tail_cdf_;
  return rank == 1 ? cdf[0] : cdf[rank - 1] - cdf[rank - 2];
}

std::string PasswordDistribution::tail_token(std::uint32_t rank) { return "pw" + std::to_string(rank); }

std::vector<HeadEntry> PasswordDistribution::head_by_frequency() const {
  auto sorted = head_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const HeadEntry& a, const HeadEntry& b) { return a.probability > b.probability; });
  return sorted;
}

}  // namespace credsim
