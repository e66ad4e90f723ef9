#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "credsim/attacker/attack.hpp"
#include "credsim/defenses/defense_stack.hpp"
#include "credsim/population/population.hpp"
#include "credsim/relgraph/graph.hpp"

namespace credsim {

/// Everything one experiment needs. Scenario files are JSON objects whose
/// keys are exactly these field names; unknown keys are rejected.
struct ScenarioConfig {
  std::string name = "unnamed";
  std::uint32_t populationSize = 0;
  std::string passwordDistId = "table1";
  double reuseRate = 0.0;
  double tweakRate = 0.0;
  double optInRelativesRate = 0.0;
  double optInFamilyTreeRate = 0.0;
  double mfaEnrollmentRate = 0.0;
  /// Corpus entries that belong to no account of this service.
  std::uint32_t noiseEntries = 0;
  DefenseStack defenses;
  AttackConfig attack = [] {
    AttackConfig a;
    a.enabled = false;
    return a;
  }();
  GraphSpec graph;
  std::uint32_t replications = 1;
  std::uint64_t rootSeed = 0;

  /// Directory that relative file references resolve against. Not serialized.
  std::filesystem::path baseDir;

  PopulationSpec population_spec() const;

  /// Throws ConfigError listing every offending field.
  void validate() const;
};

/// Parses and validates. Throws ConfigError (with every problem found) on
/// malformed JSON, wrong types, unknown keys or invalid values.
ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});

/// Throws ConfigError naming the path when the file cannot be read.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON (sorted keys) of the full configuration.
std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace credsim
