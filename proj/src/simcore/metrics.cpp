#include "credsim/simcore/metrics.hpp"

#include <cmath>

namespace credsim {

std::vector<std::pair<std::string, std::optional<double>>> metric_fields(const ReplicationMetrics& m) {
  const auto d = [](std::uint64_t v) { return std::optional<double>(static_cast<double>(v)); };
  return {
      {"amplificationFactor", m.amplificationFactor},
      {"attempts", d(m.attempts)},
      {"bannedIps", d(m.bannedIps)},
      {"exposedFamilyTree", d(m.exposedFamilyTree)},
      {"exposedRelatives", d(m.exposedRelatives)},
      {"lockedAccounts", d(m.lockedAccounts)},
      {"passwordsReset", d(m.passwordsReset)},
      {"successes", d(m.successes)},
      {"warningsIssued", d(m.warningsIssued)},
  };
}

std::map<std::string, FieldSummary> aggregate_metrics(std::span<const ReplicationMetrics> reps) {
  std::map<std::string, std::vector<double>> columns;
  for (const auto& r : reps) {
    for (const auto& [name, value] : metric_fields(r)) {
      if (value) columns[name].push_back(*value);
    }
  }

  std::map<std::string, FieldSummary> out;
  for (const auto& [name, values] : columns) {
    FieldSummary s;
    s.samples = values.size();
    double sum = 0.0;
    for (const double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double sq = 0.0;
      for (const double v : values) sq += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    out.emplace(name, s);
  }
  return out;
}

}  // namespace credsim
