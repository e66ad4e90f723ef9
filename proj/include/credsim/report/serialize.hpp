#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "credsim/attacker/attack.hpp"
#include "credsim/relgraph/exposure.hpp"
#include "credsim/simcore/metrics.hpp"

namespace credsim {

inline constexpr std::string_view kToolName = "credsim";
inline constexpr std::string_view kToolVersion = CREDSIM_VERSION;

/// {"header": {...}, "perReplication": [...], "aggregate": {...} | null}.
/// Keys are sorted; the header names the RNG family and root seed.
nlohmann::json metrics_report_json(const MetricsReport& report);

/// Inverse of metrics_report_json (header fields are read back too).
MetricsReport metrics_report_from_json(const nlohmann::json& j);

nlohmann::json attack_report_json(const AttackReport& report);
nlohmann::json exposure_report_json(const ExposureReport& report);

/// One row per replication: `replication` first, then every metric in
/// alphabetical order. Absent values are empty cells.
std::string replications_csv(const MetricsReport& report);

/// Stable textual form used for every JSON file we write.
std::string canonical_dump(const nlohmann::json& j);

struct RunManifest {
  std::string command;
  std::string scenarioPath;
  std::uint64_t rootSeed = 0;
  std::optional<std::uint32_t> replicationsOverride;
  std::string extra;  ///< command-specific argument, e.g. the defense preset
  std::vector<std::string> outputs;
  std::string scenarioJson;  ///< resolved configuration
  std::string timestamp;     ///< the only field that differs between reruns
};

nlohmann::json manifest_json(const RunManifest& m);

std::string utc_timestamp();

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace credsim
