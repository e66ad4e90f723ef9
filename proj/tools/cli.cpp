#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "credsim/authsvc/facade.hpp"
#include "credsim/population/account_io.hpp"
#include "credsim/relgraph/graph_io.hpp"
#include "credsim/report/run_output.hpp"
#include "credsim/simcore/runner.hpp"

namespace credsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

/// Raised for bad flags or inputs; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// --seed beats CREDSTUFF_SEED beats the scenario's rootSeed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CREDSTUFF_SEED"); env && *env) {
    const auto v = parse_u64(env);
    if (!v) throw UsageError(std::string("CREDSTUFF_SEED is not an unsigned integer: ") + env);
    return *v;
  }
  return fallback;
}

RunManifest base_manifest(std::string command, const std::string& scenario_path, const ScenarioConfig& cfg) {
  RunManifest m;
  m.command = std::move(command);
  m.scenarioPath = scenario_path;
  m.rootSeed = cfg.rootSeed;
  m.scenarioJson = scenario_to_json(cfg);
  m.timestamp = utc_timestamp();
  return m;
}

void emit(const json& j, const std::string& out_dir, const std::string& file, RunManifest manifest,
          std::ostream& out) {
  if (out_dir.empty()) {
    out << canonical_dump(j);
    return;
  }
  fs::create_directories(out_dir);
  write_text_file(fs::path(out_dir) / file, canonical_dump(j));
  manifest.outputs = {file, "manifest.json"};
  write_text_file(fs::path(out_dir) / "manifest.json", canonical_dump(manifest_json(manifest)));
  out << "wrote " << (fs::path(out_dir) / file).string() << '\n';
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::uint32_t> replications;
  unsigned jobs = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  auto cfg = load_scenario(a.scenario);
  cfg.rootSeed = resolve_seed(a.seed, cfg.rootSeed);
  if (a.replications) cfg.replications = *a.replications;
  cfg.validate();
  if (cfg.replications == 0) throw ConfigError({"replications: must be > 0"});
  if (a.jobs == 0) throw UsageError("--jobs must be at least 1");

  const auto report = run_scenario(cfg, RunOptions{a.jobs});
  auto manifest = base_manifest("simulate", a.scenario, cfg);
  manifest.replicationsOverride = a.replications;
  write_simulation_outputs(a.out, report, manifest);
  out << "wrote " << (fs::path(a.out) / "report.json").string() << " (" << report.perReplication.size()
      << " replications)\n";
  return kExitOk;
}

// ---- attack ---------------------------------------------------------------

enum class Preset { None, Ban, BanMfa, Full };

Preset parse_preset(const std::string& s) {
  if (s == "none") return Preset::None;
  if (s == "ban") return Preset::Ban;
  if (s == "ban+mfa") return Preset::BanMfa;
  if (s == "full") return Preset::Full;
  throw UsageError("unknown defense preset '" + s + "' (expected none, ban, ban+mfa or full)");
}

void set_enrollment(ScenarioConfig& cfg, double rate) {
  cfg.mfaEnrollmentRate = rate;
  cfg.defenses.mfa.enrollmentRate = rate;
}

/// Replaces the scenario's defense switches with a preset. Tunables (ban
/// thresholds, reset probability, ...) keep the scenario's values.
ScenarioConfig with_preset(ScenarioConfig cfg, Preset p) {
  auto& d = cfg.defenses;
  const double enrollment = cfg.mfaEnrollmentRate > 0.0 ? cfg.mfaEnrollmentRate : 1.0;
  d.ban.enabled = p != Preset::None;
  d.rateLimit.enabled = p == Preset::Full;
  d.lockout.enabled = p == Preset::Full;
  d.alerts.enabled = p == Preset::Full;
  if (p == Preset::Full) {
    d.policy.policy = *PasswordPolicy::preset("3class12");
    d.policy.breachCheck = true;
  } else {
    d.policy = PolicySettings{};
  }
  d.mfa.mandatoryTwoStep = false;
  set_enrollment(cfg, p == Preset::BanMfa || p == Preset::Full ? enrollment : 0.0);
  return cfg;
}

struct AttackArgs {
  std::string scenario;
  std::string preset = "none";
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_attack(const AttackArgs& a, std::ostream& out, std::ostream& err) {
  const auto preset = parse_preset(a.preset);
  auto cfg = load_scenario(a.scenario);
  cfg.rootSeed = resolve_seed(a.seed, cfg.rootSeed);
  if (!cfg.attack.enabled) throw UsageError(a.scenario + ": scenario has no enabled attack");

  const auto run = [](const ScenarioConfig& c) {
    c.validate();
    return run_replication(c, load_resources(c), 0);
  };
  const auto baseline_cfg = with_preset(cfg, Preset::None);
  const auto chosen_cfg = with_preset(cfg, preset);
  const auto baseline = run(baseline_cfg);
  const auto chosen = run(chosen_cfg);

  const double base_delivered = static_cast<double>(baseline.attack->delivered());
  const double reduction =
      base_delivered > 0 ? 1.0 - static_cast<double>(chosen.attack->delivered()) / base_delivered : 0.0;

  json j = {
      {"preset", a.preset},
      {"rootSeed", cfg.rootSeed},
      {"scenario", cfg.name},
      {"report", attack_report_json(*chosen.attack)},
      {"baseline", attack_report_json(*baseline.attack)},
      {"deliveredReduction", reduction},
      {"warningsIssued", chosen.metrics.warningsIssued},
      {"resetCount", chosen.metrics.passwordsReset},
  };
  auto manifest = base_manifest("attack", a.scenario, chosen_cfg);
  manifest.extra = a.preset;
  emit(j, a.out, "attack.json", manifest, out);

  // stdout carries the JSON when there is no output directory.
  auto& summary = a.out.empty() ? err : out;
  summary << std::fixed << std::setprecision(2) << "preset " << a.preset << ": successes "
      << chosen.attack->totalSuccesses << ", delivered " << chosen.attack->delivered() << " (baseline "
      << baseline.attack->delivered() << "), mean delivered/IP " << chosen.attack->mean_delivered_per_ip()
      << ", reduction " << reduction * 100.0 << "%, resetCount " << chosen.metrics.passwordsReset << '\n';
  return kExitOk;
}

// ---- exposure -------------------------------------------------------------

struct ExposureArgs {
  std::string scenario;
  std::string nodes;
  std::string edges;
  std::string compromised;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::vector<AccountId> read_id_file(const fs::path& path, std::size_t node_count) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open compromised file: " + path.string());
  std::vector<AccountId> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto v = parse_u64(line);
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (!v) throw UsageError(where + "expected an account id, got '" + line + "'");
    if (*v >= node_count) throw UsageError(where + "unknown account id " + line);
    ids.push_back(AccountId{static_cast<std::uint32_t>(*v)});
  }
  return ids;
}

/// `spec` is either an existing file of ids or a count of accounts drawn at random.
std::vector<AccountId> resolve_compromised(const std::string& spec, std::size_t node_count, RngStream rng) {
  if (fs::exists(spec)) return read_id_file(spec, node_count);
  const auto count = parse_u64(spec);
  if (!count) throw UsageError("--compromised: no such file and not a count: " + spec);
  if (*count > node_count) throw UsageError("--compromised: count exceeds account count");
  auto order = shuffled_indices(node_count, rng);
  std::vector<AccountId> ids;
  for (std::size_t i = 0; i < *count; ++i) ids.push_back(AccountId{static_cast<std::uint32_t>(order[i])});
  return ids;
}

int cmd_exposure(const ExposureArgs& a, std::ostream& out) {
  const bool files = !a.nodes.empty() || !a.edges.empty();
  if (files == !a.scenario.empty()) throw UsageError("give either --scenario or both --nodes and --edges");
  if (files && (a.nodes.empty() || a.edges.empty())) throw UsageError("--nodes and --edges go together");

  RunManifest manifest;
  ExposureReport report;
  if (files) {
    if (a.compromised.empty()) throw UsageError("--compromised is required with graph files");
    RelativesGraph graph;
    try {
      graph = read_graph_files(a.nodes, a.edges);
    } catch (const GraphFormatError& e) {
      throw UsageError(e.what());
    }
    const auto seed = resolve_seed(a.seed, 0);
    const auto ids = resolve_compromised(a.compromised, graph.node_count(), RngStream(seed).derive("compromised"));
    report = compute_exposure(graph, ids);
    manifest.command = "exposure";
    manifest.rootSeed = seed;
    manifest.extra = a.nodes + " " + a.edges + " " + a.compromised;
    manifest.timestamp = utc_timestamp();
  } else {
    auto cfg = load_scenario(a.scenario);
    cfg.rootSeed = resolve_seed(a.seed, cfg.rootSeed);
    if (!cfg.graph.enabled) throw UsageError(a.scenario + ": scenario has no enabled graph");
    if (!a.compromised.empty()) cfg.attack.enabled = false;
    cfg.validate();
    const auto result = run_replication(cfg, load_resources(cfg), 0);
    if (a.compromised.empty()) {
      report = *result.exposure;
    } else {
      const auto rng = replication_stream(cfg, 0).derive("compromised");
      report = compute_exposure(*result.graph, resolve_compromised(a.compromised, result.graph->node_count(), rng));
    }
    manifest = base_manifest("exposure", a.scenario, cfg);
    manifest.extra = a.compromised;
  }

  emit(exposure_report_json(report), a.out, "exposure.json", manifest, out);
  if (!a.out.empty()) {
    out << "compromised " << report.compromised.size() << ", exposedRelatives " << report.exposedRelatives.size()
        << ", exposedFamilyTree " << report.exposedFamilyTree.size() << ", amplification ";
    if (report.amplificationFactor) out << std::fixed << std::setprecision(2) << *report.amplificationFactor;
    else out << "n/a";
    out << '\n';
  }
  return kExitOk;
}

// ---- gen-population / check-population ------------------------------------

struct GenArgs {
  std::string scenario;
  std::optional<std::uint32_t> size;
  std::optional<double> reuse;
  std::optional<double> tweak;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_gen_population(const GenArgs& a, std::ostream& out) {
  ScenarioConfig cfg;
  if (!a.scenario.empty()) cfg = load_scenario(a.scenario);
  if (a.size) cfg.populationSize = *a.size;
  if (a.reuse) cfg.reuseRate = *a.reuse;
  if (a.tweak) cfg.tweakRate = *a.tweak;
  cfg.rootSeed = resolve_seed(a.seed, cfg.rootSeed);
  cfg.validate();

  const auto pop = generate_population(cfg, replication_stream(cfg, 0).derive("population"));
  fs::create_directories(a.out);
  write_accounts(fs::path(a.out) / "accounts.csv", pop.accounts);
  write_corpus(fs::path(a.out) / "corpus.csv", pop.corpus);
  auto manifest = base_manifest("gen-population", a.scenario, cfg);
  manifest.outputs = {"accounts.csv", "corpus.csv", "manifest.json"};
  write_text_file(fs::path(a.out) / "manifest.json", canonical_dump(manifest_json(manifest)));
  out << "wrote " << pop.accounts.size() << " accounts and " << pop.corpus.entries.size() << " corpus entries to "
      << a.out << '\n';
  return kExitOk;
}

int cmd_check_population(const std::string& accounts_path, const std::string& corpus_path, std::ostream& out,
                         std::ostream& err) {
  const auto accounts = load_accounts(accounts_path);
  const auto corpus = load_corpus(corpus_path);
  auto problems = check_population_invariants(accounts, corpus);
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    if (to_index(accounts[i].id) != i) {
      problems.push_back("account ids are not 0..n-1 in order at row " + std::to_string(i + 1));
      break;
    }
  }
  if (!problems.empty()) {
    for (const auto& p : problems) err << p << '\n';
    err << problems.size() << " invariant violation(s)\n";
    return kExitConfig;
  }
  std::map<ReuseClass, std::size_t> by_class;
  for (const auto& acc : accounts) ++by_class[acc.reuseClass];
  out << "ok: " << accounts.size() << " accounts (" << by_class[ReuseClass::ExactReuse] << " ExactReuse, "
      << by_class[ReuseClass::TweakedReuse] << " TweakedReuse, " << by_class[ReuseClass::Unique] << " Unique), "
      << corpus.entries.size() << " corpus entries\n";
  return kExitOk;
}

// ---- report ---------------------------------------------------------------

struct ReportArgs {
  std::string run;
  bool frequency = false;
  std::uint64_t samples = 1000000;
  std::string distribution = "table1";
  std::optional<std::uint64_t> seed;
};

void alert_table(const MetricsReport& r, std::ostream& out) {
  out << std::left << std::setw(12) << "replication" << std::right << std::setw(12) << "warnings" << std::setw(12)
      << "ignored" << std::setw(12) << "reset" << std::setw(12) << "reset%" << '\n';
  std::uint64_t tw = 0, tr = 0;
  const auto row = [&out](const std::string& label, std::uint64_t w, std::uint64_t reset) {
    const double pct = w ? 100.0 * static_cast<double>(reset) / static_cast<double>(w) : 0.0;
    out << std::left << std::setw(12) << label << std::right << std::setw(12) << w << std::setw(12) << (w - reset)
        << std::setw(12) << reset << std::setw(11) << std::fixed << std::setprecision(2) << pct << "%\n";
  };
  for (std::size_t i = 0; i < r.perReplication.size(); ++i) {
    const auto& m = r.perReplication[i];
    row(std::to_string(i), m.warningsIssued, m.passwordsReset);
    tw += m.warningsIssued;
    tr += m.passwordsReset;
  }
  if (r.perReplication.size() > 1) row("total", tw, tr);
}

void metric_summary(const MetricsReport& r, std::ostream& out) {
  out << std::left << std::setw(22) << "metric" << std::right << std::setw(16) << "mean" << std::setw(16)
      << "stddev" << std::setw(9) << "samples" << '\n';
  for (const auto& [name, s] : r.aggregate) {
    out << std::left << std::setw(22) << name << std::right << std::fixed << std::setprecision(4) << std::setw(16)
        << s.mean << std::setw(16) << s.stddev << std::setw(9) << s.samples << '\n';
  }
}

void frequency_table(const ReportArgs& a, std::ostream& out) {
  const auto dist = PasswordDistribution::resolve(a.distribution);
  auto rng = RngStream(resolve_seed(a.seed, 0)).derive("frequency");
  std::map<std::string, std::uint64_t> counts;
  const auto head = dist.head_by_frequency();
  for (const auto& e : head) counts[e.password] = 0;
  std::uint64_t other = 0;
  for (std::uint64_t i = 0; i < a.samples; ++i) {
    const auto pw = dist.sample(rng);
    if (const auto it = counts.find(pw); it != counts.end()) ++it->second;
    else ++other;
  }
  const double n = static_cast<double>(a.samples);
  out << std::left << std::setw(6) << "rank" << std::setw(16) << "password" << std::right << std::setw(10)
      << "count" << std::setw(12) << "observed" << std::setw(12) << "expected" << '\n';
  out << std::fixed << std::setprecision(3);
  for (std::size_t i = 0; i < head.size(); ++i) {
    const auto c = counts[head[i].password];
    out << std::left << std::setw(6) << i + 1 << std::setw(16) << head[i].password << std::right << std::setw(10)
        << c << std::setw(11) << 100.0 * static_cast<double>(c) / n << "%" << std::setw(11)
        << 100.0 * head[i].probability << "%\n";
  }
  out << std::left << std::setw(6) << "-" << std::setw(16) << "(other)" << std::right << std::setw(10) << other
      << std::setw(11) << 100.0 * static_cast<double>(other) / n << "%" << std::setw(11)
      << 100.0 * dist.tail_mass() << "%\n";
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  if (a.frequency) {
    if (a.samples == 0) throw UsageError("--samples must be positive");
    frequency_table(a, out);
    return kExitOk;
  }
  if (a.run.empty()) throw UsageError("report needs --run or --frequency");
  const auto path = fs::path(a.run) / "report.json";
  if (!fs::exists(path)) throw UsageError("no report.json in " + a.run);
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  const auto r = metrics_report_from_json(j);
  out << "scenario " << r.scenarioName << ", rootSeed " << r.rootSeed << ", " << r.perReplication.size()
      << " replications\n\n";
  alert_table(r, out);
  out << '\n';
  metric_summary(r, out);
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  std::string scenario;
  std::string socket;
  std::optional<std::uint64_t> seed;
  std::size_t maxRequests = 0;
};

int cmd_serve(const ServeArgs& a, std::ostream& out) {
  auto cfg = load_scenario(a.scenario);
  cfg.rootSeed = resolve_seed(a.seed, cfg.rootSeed);
  cfg.validate();
  const auto res = load_resources(cfg);
  const auto rep = replication_stream(cfg, 0);
  auto pop = generate_population(cfg.population_spec(), *res.distribution, rep.derive("population"));
  AuthService svc(ServiceConfig{cfg.defenses}, std::move(pop.accounts), rep.derive("service"));
  svc.set_breach_corpus(pop.corpus);

  g_stop = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  out << "serving " << svc.accounts().size() << " accounts on " << a.socket << std::endl;
  const auto n = serve_facade(svc, FacadeOptions{a.socket, a.maxRequests}, g_stop);
  out << "answered " << n << " requests\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Credential stuffing and breach amplification simulator", "credsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run every replication of a scenario");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON file")->required();
  simulate->add_option("--seed", sim.seed, "Root seed (overrides CREDSTUFF_SEED and the scenario)");
  simulate->add_option("--out", sim.out, "Output directory")->required();
  simulate->add_option("--replications", sim.replications, "Override the replication count");
  simulate->add_option("--jobs", sim.jobs, "Replications run in parallel")->capture_default_str();

  AttackArgs atk;
  auto* attack = app.add_subcommand("attack", "Run one attack under a defense preset against a no-defense baseline");
  attack->add_option("--scenario", atk.scenario, "Scenario JSON file")->required();
  attack->add_option("--defense-preset", atk.preset, "none, ban, ban+mfa or full")->capture_default_str();
  attack->add_option("--seed", atk.seed, "Root seed");
  attack->add_option("--out", atk.out, "Output directory (stdout when omitted)");

  ExposureArgs exp;
  auto* exposure = app.add_subcommand("exposure", "Profiles exposed through compromised accounts' relatives");
  exposure->add_option("--scenario", exp.scenario, "Scenario JSON file");
  exposure->add_option("--nodes", exp.nodes, "Node attribute file");
  exposure->add_option("--edges", exp.edges, "Edge list file");
  exposure->add_option("--compromised", exp.compromised, "Count of random accounts or file of ids");
  exposure->add_option("--seed", exp.seed, "Root seed");
  exposure->add_option("--out", exp.out, "Output directory (stdout when omitted)");

  GenArgs gen;
  auto* gen_pop = app.add_subcommand("gen-population", "Write a population and its breach corpus");
  gen_pop->add_option("--scenario", gen.scenario, "Scenario JSON file supplying defaults");
  gen_pop->add_option("--size", gen.size, "Number of accounts");
  gen_pop->add_option("--reuse-rate", gen.reuse, "Fraction reusing a leaked password verbatim");
  gen_pop->add_option("--tweak-rate", gen.tweak, "Fraction reusing a tweaked leaked password");
  gen_pop->add_option("--seed", gen.seed, "Root seed");
  gen_pop->add_option("--out", gen.out, "Output directory")->required();

  std::string accounts_path, corpus_path;
  auto* check_pop = app.add_subcommand("check-population", "Verify a generated population's invariants");
  check_pop->add_option("--accounts", accounts_path, "accounts.csv")->required();
  check_pop->add_option("--corpus", corpus_path, "corpus.csv")->required();

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Render tables from a run directory or a sampled distribution");
  report->add_option("--run", rep.run, "Directory written by simulate");
  report->add_flag("--frequency", rep.frequency, "Sample passwords and tabulate head frequencies");
  report->add_option("--samples", rep.samples, "Passwords sampled for --frequency")->capture_default_str();
  report->add_option("--distribution", rep.distribution, "table1 or a distribution file")->capture_default_str();
  report->add_option("--seed", rep.seed, "Sampling seed");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Serve a scenario's login endpoint on a Unix socket");
  serve->add_option("--scenario", srv.scenario, "Scenario JSON file")->required();
  serve->add_option("--socket", srv.socket, "Socket path")->required();
  serve->add_option("--seed", srv.seed, "Root seed");
  serve->add_option("--max-requests", srv.maxRequests, "Exit after this many requests (0 = until signalled)");

  std::vector<std::string> argv_store{"credsim"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*attack) return cmd_attack(atk, out, err);
    if (*exposure) return cmd_exposure(exp, out);
    if (*gen_pop) return cmd_gen_population(gen, out);
    if (*check_pop) return cmd_check_population(accounts_path, corpus_path, out, err);
    if (*report) return cmd_report(rep, out);
    if (*serve) return cmd_serve(srv, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace credsim::cli
