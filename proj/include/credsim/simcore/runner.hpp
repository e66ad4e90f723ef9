#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "credsim/attacker/attack.hpp"
#include "credsim/defenses/breach_alerts.hpp"
#include "credsim/relgraph/exposure.hpp"
#include "credsim/simcore/metrics.hpp"
#include "credsim/simcore/scenario.hpp"

namespace credsim {

/// Files a scenario references, loaded once and shared read-only by all
/// replications.
struct ScenarioResources {
  std::shared_ptr<const PasswordDistribution> distribution;
  std::shared_ptr<const BreachCorpus> externalCorpus;
  std::shared_ptr<const std::vector<std::string>> dictionary;
};

ScenarioResources load_resources(const ScenarioConfig& cfg);

/// Everything one replication produced.
struct ReplicationResult {
  ReplicationMetrics metrics;
  Population population;  ///< as generated, before any defense acted
  std::vector<UserAccount> finalAccounts;
  std::optional<AttackReport> attack;
  AlertResponse alerts;
  std::optional<RelativesGraph> graph;
  std::optional<ExposureReport> exposure;
};

/// Stream for replication `index`: path ["rep", index].
RngStream replication_stream(const ScenarioConfig& cfg, std::uint32_t index);

/// One replication: population, service, proactive breach alerts, attack,
/// then exposure of the compromised accounts through the relatives graph.
ReplicationResult run_replication(const ScenarioConfig& cfg, const ScenarioResources& resources,
                                  std::uint32_t index);

struct RunOptions {
  unsigned jobs = 1;
};

/// Validates, then runs cfg.replications replications (in parallel when
/// jobs > 1) and aggregates them in index order.
MetricsReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace credsim
