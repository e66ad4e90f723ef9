#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "credsim/simcore/rng.hpp"

namespace credsim {

struct HeadEntry {
  std::string password;
  double probability = 0.0;
};

struct ZipfTail {
  double exponent = 1.0;
  std::uint32_t vocabulary = 100000;
};

/// Leak-frequency password model: an explicit head of (password, probability)
/// rows plus a Zipf tail over synthetic tokens "pw1".."pwV" carrying the
/// remaining mass.
class PasswordDistribution {
 public:
  /// Throws ConfigError when the head is empty of mass yet the tail is empty,
  /// probabilities are non-positive, duplicates exist or the head sums past 1.
  PasswordDistribution(std::vector<HeadEntry> head, ZipfTail tail);

  /// The default leak distribution (ten most frequent passwords of the
  /// 12306 dataset) with a Zipf(1.0) tail over 1e5 tokens.
  static PasswordDistribution table1();

  /// Rows `password,probability`, then an optional `zipf,s,V` stanza.
  /// Blank lines and lines starting with '#' are ignored.
  static PasswordDistribution parse(std::istream& in);
  static PasswordDistribution load(const std::filesystem::path& path);

  /// Resolves a passwordDistId: "table1" or a file path.
  static PasswordDistribution resolve(const std::string& id, const std::filesystem::path& base_dir = {});

  std::string sample(RngStream& rng) const;

  const std::vector<HeadEntry>& head() const noexcept { return head_; }
  double tail_mass() const noexcept { return tail_mass_; }
  const ZipfTail& tail() const noexcept { return tail_; }

  /// Probability of a tail token of the given 1-based rank (before the tail mass is applied).
  double tail_rank_probability(std::uint32_t rank) const;

  static std::string tail_token(std::uint32_t rank);

  /// Head entries sorted by descending probability (stable for ties).
  std::vector<HeadEntry> head_by_frequency() const;

 private:
  std::vector<HeadEntry> head_;
  std::vector<double> head_cdf_;
  double tail_mass_ = 0.0;
  ZipfTail tail_;
  std::shared_ptr<const std::vector<double>> tail_cdf_;
};

}  // namespace credsim
