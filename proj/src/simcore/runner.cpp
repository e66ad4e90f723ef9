#include "credsim/simcore/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace credsim {
namespace {

std::filesystem::path resolve(const ScenarioConfig& cfg, const std::string& ref) {
  std::filesystem::path p(ref);
  if (p.is_relative() && !cfg.baseDir.empty()) p = cfg.baseDir / p;
  return p;
}

}  // namespace

ScenarioResources load_resources(const ScenarioConfig& cfg) {
  ScenarioResources res;
  res.distribution =
      std::make_shared<const PasswordDistribution>(PasswordDistribution::resolve(cfg.passwordDistId, cfg.baseDir));
  if (cfg.attack.enabled) {
    if (cfg.attack.corpusRef != "generated" && (cfg.attack.strategy == AttackStrategy::CredentialStuffing ||
                                                cfg.attack.strategy == AttackStrategy::TweakedStuffing)) {
      res.externalCorpus = std::make_shared<const BreachCorpus>(load_corpus(resolve(cfg, cfg.attack.corpusRef)));
    }
    if (cfg.attack.strategy == AttackStrategy::Dictionary) {
      const auto dist = cfg.attack.dictionaryRef == "default"
                            ? *res.distribution
                            : PasswordDistribution::load(resolve(cfg, cfg.attack.dictionaryRef));
      std::vector<std::string> words;
      for (const auto& e : dist.head_by_frequency()) words.push_back(e.password);
      res.dictionary = std::make_shared<const std::vector<std::string>>(std::move(words));
    }
  }
  return res;
}

RngStream replication_stream(const ScenarioConfig& cfg, std::uint32_t index) {
  return RngStream(cfg.rootSeed).derive("rep").derive(index);
}

ReplicationResult run_replication(const ScenarioConfig& cfg, const ScenarioResources& resources,
                                  std::uint32_t index) {
  const auto rep = replication_stream(cfg, index);
  ReplicationResult out;
  out.population = generate_population(cfg.population_spec(), *resources.distribution, rep.derive("population"));

  AuthService svc(ServiceConfig{cfg.defenses}, out.population.accounts, rep.derive("service"));
  svc.set_breach_corpus(out.population.corpus);

  if (cfg.defenses.alerts.enabled) {
    const auto warnings = breach_alert_scan(svc.accounts(), out.population.corpus);
    auto alert_rng = rep.derive("alerts");
    out.alerts = apply_alert_response(warnings, cfg.defenses.alerts, alert_rng,
                                      [&svc](AccountId id) -> std::string_view { return svc.account(id).riskTag; });
    auto pw_rng = rep.derive("alert-passwords");
    svc.reset_with_generated_passwords(out.alerts.reset, pw_rng);
    out.metrics.warningsIssued = warnings.size();
    out.metrics.passwordsReset = out.alerts.reset.size();
  }

  std::vector<AccountId> compromised;
  if (cfg.attack.enabled) {
    AttackInputs inputs;
    inputs.corpus = resources.externalCorpus ? resources.externalCorpus.get() : &out.population.corpus;
    inputs.dictionary = resources.dictionary.get();
    SimClock clock;
    out.attack = run_attack(svc, cfg.attack, inputs, clock, rep.derive("attack"));
    out.metrics.attempts = out.attack->totalAttempts;
    out.metrics.successes = out.attack->totalSuccesses;
    out.metrics.bannedIps = out.attack->bannedIpCount;
    out.metrics.lockedAccounts = out.attack->lockedAccountCount;
    compromised = out.attack->compromisedAccountIds;
  }

  if (cfg.graph.enabled) {
    out.graph = generate_graph(out.population.accounts, cfg.graph, rep.derive("graph"));
    out.exposure = compute_exposure(*out.graph, compromised);
    out.metrics.exposedRelatives = out.exposure->exposedRelatives.size();
    out.metrics.exposedFamilyTree = out.exposure->exposedFamilyTree.size();
    out.metrics.amplificationFactor = out.exposure->amplificationFactor;
  } else if (!compromised.empty()) {
    out.metrics.amplificationFactor = 0.0;
  }

  out.finalAccounts.assign(svc.accounts().begin(), svc.accounts().end());
  return out;
}

MetricsReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const auto resources = load_resources(cfg);

  MetricsReport report;
  report.scenarioName = cfg.name;
  report.rootSeed = cfg.rootSeed;
  report.perReplication.resize(cfg.replications);

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.jobs, cfg.replications));
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto work = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= cfg.replications) return;
      try {
        report.perReplication[i] = run_replication(cfg, resources, i).metrics;
      } catch (...) {
        const std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = cfg.replications;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  report.aggregate = aggregate_metrics(report.perReplication);
  return report;
}

}  // namespace credsim
