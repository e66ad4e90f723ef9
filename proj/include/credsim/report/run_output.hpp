#pragma once

#include <filesystem>
#include <string>

#include "credsim/report/serialize.hpp"
#include "credsim/simcore/scenario.hpp"

namespace credsim {

/// Writes report.json, replications.csv and manifest.json into `out_dir`
/// (created if needed).
void write_simulation_outputs(const std::filesystem::path& out_dir, const MetricsReport& report,
                              RunManifest manifest);

}  // namespace credsim
