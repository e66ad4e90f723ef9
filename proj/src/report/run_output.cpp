#include "credsim/report/run_output.hpp"

namespace credsim {

void write_simulation_outputs(const std::filesystem::path& out_dir, const MetricsReport& report,
                              RunManifest manifest) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "report.json", canonical_dump(metrics_report_json(report)));
  write_text_file(out_dir / "replications.csv", replications_csv(report));
  manifest.outputs = {"report.json", "replications.csv", "manifest.json"};
  write_text_file(out_dir / "manifest.json", canonical_dump(manifest_json(manifest)));
}

}  // namespace credsim
