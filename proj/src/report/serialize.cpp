#include "credsim/report/serialize.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "credsim/simcore/rng.hpp"

namespace credsim {

using nlohmann::json;

namespace {

json metrics_json(const ReplicationMetrics& m) {
  json j = json::object();
  for (const auto& [name, value] : metric_fields(m)) {
    if (name == "amplificationFactor") {
      j[name] = value ? json(*value) : json(nullptr);
    } else {
      j[name] = static_cast<std::uint64_t>(*value);
    }
  }
  return j;
}

json id_list(const std::vector<AccountId>& ids) {
  json arr = json::array();
  for (const auto id : ids) arr.push_back(to_index(id));
  return arr;
}

}  // namespace

json metrics_report_json(const MetricsReport& report) {
  json reps = json::array();
  for (std::size_t i = 0; i < report.perReplication.size(); ++i) {
    auto row = metrics_json(report.perReplication[i]);
    row["replication"] = i;
    reps.push_back(std::move(row));
  }
  json aggregate = nullptr;
  if (!report.aggregate.empty()) {
    aggregate = json::object();
    for (const auto& [name, s] : report.aggregate) {
      aggregate[name] = {{"mean", s.mean}, {"stddev", s.stddev}, {"samples", s.samples}};
    }
  }
  return {
      {"header",
       {{"tool", kToolName},
        {"toolVersion", kToolVersion},
        {"rngFamily", kRngFamily},
        {"rootSeed", report.rootSeed},
        {"scenario", report.scenarioName},
        {"replications", report.perReplication.size()}}},
      {"perReplication", std::move(reps)},
      {"aggregate", std::move(aggregate)},
  };
}

MetricsReport metrics_report_from_json(const json& j) {
  MetricsReport r;
  r.scenarioName = j.at("header").at("scenario").get<std::string>();
  r.rootSeed = j.at("header").at("rootSeed").get<std::uint64_t>();
  for (const auto& row : j.at("perReplication")) {
    ReplicationMetrics m;
    m.attempts = row.at("attempts").get<std::uint64_t>();
    m.successes = row.at("successes").get<std::uint64_t>();
    m.bannedIps = row.at("bannedIps").get<std::uint64_t>();
    m.lockedAccounts = row.at("lockedAccounts").get<std::uint64_t>();
    m.warningsIssued = row.at("warningsIssued").get<std::uint64_t>();
    m.passwordsReset = row.at("passwordsReset").get<std::uint64_t>();
    m.exposedRelatives = row.at("exposedRelatives").get<std::uint64_t>();
    m.exposedFamilyTree = row.at("exposedFamilyTree").get<std::uint64_t>();
    if (!row.at("amplificationFactor").is_null()) m.amplificationFactor = row.at("amplificationFactor").get<double>();
    r.perReplication.push_back(m);
  }
  if (!j.at("aggregate").is_null()) {
    for (const auto& [name, s] : j.at("aggregate").items()) {
      r.aggregate[name] = {s.at("mean").get<double>(), s.at("stddev").get<double>(),
                           s.at("samples").get<std::size_t>()};
    }
  }
  return r;
}

json attack_report_json(const AttackReport& report) {
  json hist = json::object();
  for (std::size_t i = 0; i < kLoginOutcomeCount; ++i) {
    const auto o = static_cast<LoginOutcome>(i);
    const auto it = report.outcomeHistogram.find(o);
    hist[std::string(to_string(o))] = it == report.outcomeHistogram.end() ? 0 : it->second;
  }
  json per_ip = json::array();
  for (const auto& p : report.perIp) {
    per_ip.push_back({{"ip", to_index(p.ip)},
                      {"attemptsDelivered", p.attemptsDelivered},
                      {"attemptsBlocked", p.attemptsBlocked},
                      {"successes", p.successes}});
  }
  return {
      {"totalAttempts", report.totalAttempts},
      {"totalSuccesses", report.totalSuccesses},
      {"delivered", report.delivered()},
      {"blocked", report.blocked()},
      {"meanDeliveredPerIp", report.mean_delivered_per_ip()},
      {"compromisedAccountIds", id_list(report.compromisedAccountIds)},
      {"bannedIpCount", report.bannedIpCount},
      {"lockedAccountCount", report.lockedAccountCount},
      {"perIp", std::move(per_ip)},
      {"outcomeHistogram", std::move(hist)},
  };
}

json exposure_report_json(const ExposureReport& report) {
  json fields = json::object();
  for (const auto& [name, count] : report.fieldExposureCounts) fields[name] = count;
  return {
      {"compromised", id_list(report.compromised)},
      {"exposedRelatives", id_list(report.exposedRelatives)},
      {"exposedFamilyTree", id_list(report.exposedFamilyTree)},
      {"compromisedCount", report.compromised.size()},
      {"exposedRelativesCount", report.exposedRelatives.size()},
      {"exposedFamilyTreeCount", report.exposedFamilyTree.size()},
      {"amplificationFactor", report.amplificationFactor ? json(*report.amplificationFactor) : json(nullptr)},
      {"fieldExposureCounts", std::move(fields)},
  };
}

std::string replications_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "replication";
  for (const auto& [name, _] : metric_fields(ReplicationMetrics{})) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < report.perReplication.size(); ++i) {
    out << i;
    for (const auto& [name, value] : metric_fields(report.perReplication[i])) {
      out << ',';
      if (!value) continue;
      if (name == "amplificationFactor") out << json(*value).dump();
      else out << static_cast<std::uint64_t>(*value);
    }
    out << '\n';
  }
  return out.str();
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json manifest_json(const RunManifest& m) {
  json j = {
      {"command", m.command},
      {"scenarioPath", m.scenarioPath},
      {"rootSeed", m.rootSeed},
      {"toolVersion", kToolVersion},
      {"rngFamily", kRngFamily},
      {"outputs", m.outputs},
      {"timestamp", m.timestamp},
      {"replicationsOverride", m.replicationsOverride ? json(*m.replicationsOverride) : json(nullptr)},
  };
  if (!m.extra.empty()) j["argument"] = m.extra;
  if (!m.scenarioJson.empty()) j["scenario"] = json::parse(m.scenarioJson);
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace credsim
