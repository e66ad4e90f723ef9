#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace credsim {

struct ReplicationMetrics {
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t bannedIps = 0;
  std::uint64_t lockedAccounts = 0;
  std::uint64_t warningsIssued = 0;
  std::uint64_t passwordsReset = 0;
  std::uint64_t exposedRelatives = 0;
  std::uint64_t exposedFamilyTree = 0;
  /// Absent when no account was compromised.
  std::optional<double> amplificationFactor;

  friend bool operator==(const ReplicationMetrics&, const ReplicationMetrics&) = default;
};

/// (name, value) for every metric, in canonical (alphabetical) order.
std::vector<std::pair<std::string, std::optional<double>>> metric_fields(const ReplicationMetrics& m);

struct FieldSummary {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for a single sample.
  double stddev = 0.0;
  std::size_t samples = 0;

  friend bool operator==(const FieldSummary&, const FieldSummary&) = default;
};

/// Mean and standard deviation of every field, accumulated in ascending
/// replication order. Fields with no present value are omitted; the whole
/// map is empty when there are no replications.
std::map<std::string, FieldSummary> aggregate_metrics(std::span<const ReplicationMetrics> reps);

struct MetricsReport {
  std::string scenarioName;
  std::uint64_t rootSeed = 0;
  std::vector<ReplicationMetrics> perReplication;
  std::map<std::string, FieldSummary> aggregate;
};

}  // namespace credsim
