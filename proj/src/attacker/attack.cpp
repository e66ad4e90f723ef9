#include "credsim/attacker/attack.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "credsim/attacker/tweak_rules.hpp"

namespace credsim {
namespace {

struct Candidate {
  std::string username;
  std::string password;
};

// Ordered, lazily evaluated list of (username, password) guesses.
class CandidateList {
 public:
  virtual ~CandidateList() = default;
  virtual std::uint64_t size() const = 0;
  virtual Candidate at(std::uint64_t i) const = 0;
};

class MaterializedCandidates final : public CandidateList {
 public:
  explicit MaterializedCandidates(std::vector<Candidate> items) : items_(std::move(items)) {}
  std::uint64_t size() const override { return items_.size(); }
  Candidate at(std::uint64_t i) const override { return items_[i]; }

 private:
  std::vector<Candidate> items_;
};

// Password-major: every target gets word 0, then word 1, ...
class DictionaryCandidates final : public CandidateList {
 public:
  DictionaryCandidates(std::vector<std::string> targets, const std::vector<std::string>& words)
      : targets_(std::move(targets)), words_(words) {}
  std::uint64_t size() const override { return static_cast<std::uint64_t>(targets_.size()) * words_.size(); }
  Candidate at(std::uint64_t i) const override {
    return {targets_[i % targets_.size()], words_[i / targets_.size()]};
  }

 private:
  std::vector<std::string> targets_;
  const std::vector<std::string>& words_;
};

// User-major: the whole keyspace against target 0, then target 1, ...
class BruteForceCandidates final : public CandidateList {
 public:
  BruteForceCandidates(std::vector<std::string> targets, Keyspace ks)
      : targets_(std::move(targets)), ks_(std::move(ks)), per_target_(ks_.size()) {}
  std::uint64_t size() const override {
    const auto t = static_cast<std::uint64_t>(targets_.size());
    if (t != 0 && per_target_ > std::numeric_limits<std::uint64_t>::max() / t) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return per_target_ * t;
  }
  Candidate at(std::uint64_t i) const override { return {targets_[i / per_target_], ks_.guess(i % per_target_)}; }

 private:
  std::vector<std::string> targets_;
  Keyspace ks_;
  std::uint64_t per_target_;
};

std::vector<std::string> resolve_targets(const AuthService& svc, const AttackConfig& cfg) {
  if (!cfg.targetUsernames.empty()) return cfg.targetUsernames;
  std::vector<std::string> all;
  all.reserve(svc.accounts().size());
  for (const auto& a : svc.accounts()) all.push_back(a.credential.username);
  return all;
}

std::unique_ptr<CandidateList> build_candidates(const AuthService& svc, const AttackConfig& cfg,
                                                const AttackInputs& inputs) {
  switch (cfg.strategy) {
    case AttackStrategy::CredentialStuffing:
    case AttackStrategy::TweakedStuffing: {
      if (inputs.corpus == nullptr) throw std::invalid_argument("run_attack: stuffing requires a breach corpus");
      const std::unordered_set<std::string> only(cfg.targetUsernames.begin(), cfg.targetUsernames.end());
      std::vector<Candidate> items;
      for (const auto& e : inputs.corpus->entries) {
        if (!only.empty() && !only.contains(e.username)) continue;
        items.push_back({e.username, e.password});
        if (cfg.strategy == AttackStrategy::TweakedStuffing && !e.password.empty()) {
          for (auto& v : tweak_variants(e.password)) items.push_back({e.username, std::move(v)});
        }
      }
      return std::make_unique<MaterializedCandidates>(std::move(items));
    }
    case AttackStrategy::Dictionary:
      if (inputs.dictionary == nullptr) throw std::invalid_argument("run_attack: dictionary mode requires a word list");
      return std::make_unique<DictionaryCandidates>(resolve_targets(svc, cfg), *inputs.dictionary);
    case AttackStrategy::BruteForce:
      return std::make_unique<BruteForceCandidates>(resolve_targets(svc, cfg), cfg.keyspace);
  }
  throw std::invalid_argument("run_attack: unknown strategy");
}

struct Cursor {
  Tick tick;
  std::uint64_t global;
  std::uint32_t ip;
  std::uint64_t k;
};

struct LaterFirst {
  bool operator()(const Cursor& a, const Cursor& b) const noexcept {
    return a.tick != b.tick ? a.tick > b.tick : a.global > b.global;
  }
};

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string_view to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::BruteForce: return "BruteForce";
    case AttackStrategy::Dictionary: return "Dictionary";
    case AttackStrategy::CredentialStuffing: return "CredentialStuffing";
    case AttackStrategy::TweakedStuffing: return "TweakedStuffing";
  }
  return "CredentialStuffing";
}

std::optional<AttackStrategy> parse_attack_strategy(std::string_view s) {
  for (auto v : {AttackStrategy::BruteForce, AttackStrategy::Dictionary, AttackStrategy::CredentialStuffing,
                 AttackStrategy::TweakedStuffing}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::uint64_t Keyspace::size() const noexcept {
  std::uint64_t n = 1;
  const std::uint64_t base = alphabet.size();
  for (std::uint32_t i = 0; i < length; ++i) {
    if (base != 0 && n > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= base;
  }
  return n;
}

std::string Keyspace::guess(std::uint64_t index) const {
  std::string out(length, alphabet.front());
  const std::uint64_t base = alphabet.size();
  for (std::size_t pos = length; pos > 0 && index > 0; --pos) {
    out[pos - 1] = alphabet[index % base];
    index /= base;
  }
  return out;
}

void AttackConfig::validate() const {
  std::vector<std::string> problems;
  if (ipPoolSize == 0) problems.emplace_back("attack.ipPoolSize: must be > 0");
  if (attemptsPerIpBudget == 0) problems.emplace_back("attack.attemptsPerIpBudget: must be > 0");
  if (!(pacing > 0.0) || !std::isfinite(pacing)) problems.emplace_back("attack.pacing: must be > 0");
  if (!(pacingJitter >= 0.0 && pacingJitter < 1.0)) problems.emplace_back("attack.pacingJitter: must be in [0,1)");
  if (strategy == AttackStrategy::BruteForce) {
    if (keyspace.alphabet.empty()) problems.emplace_back("attack.keyspace.alphabet: must not be empty");
    if (keyspace.length == 0) problems.emplace_back("attack.keyspace.length: must be > 0");
    std::string sorted = keyspace.alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      problems.emplace_back("attack.keyspace.alphabet: symbols must be unique");
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::uint64_t AttackReport::delivered() const noexcept {
  std::uint64_t n = 0;
  for (const auto& p : perIp) n += p.attemptsDelivered;
  return n;
}

std::uint64_t AttackReport::blocked() const noexcept {
  std::uint64_t n = 0;
  for (const auto& p : perIp) n += p.attemptsBlocked;
  return n;
}

double AttackReport::mean_delivered_per_ip() const noexcept {
  return perIp.empty() ? 0.0 : static_cast<double>(delivered()) / static_cast<double>(perIp.size());
}

AttackReport run_attack(AuthService& svc, const AttackConfig& cfg, const AttackInputs& inputs, SimClock& clock,
                        RngStream rng) {
  cfg.validate();
  const auto candidates = build_candidates(svc, cfg, inputs);

  const std::uint32_t pool = cfg.ipPoolSize;
  const std::uint64_t budget_total =
      cfg.attemptsPerIpBudget > std::numeric_limits<std::uint64_t>::max() / pool
          ? std::numeric_limits<std::uint64_t>::max()
          : cfg.attemptsPerIpBudget * pool;
  const std::uint64_t total = std::min(candidates->size(), budget_total);

  auto pacing_rng = rng.derive("pacing");
  std::vector<double> pacing(pool, cfg.pacing);
  if (cfg.pacingJitter > 0.0) {
    for (auto& p : pacing) p *= 1.0 + cfg.pacingJitter * (2.0 * pacing_rng.uniform01() - 1.0);
  }

  const Tick start = clock.now();
  const auto tick_of = [&](std::uint32_t ip, std::uint64_t k) {
    return start + static_cast<Tick>(std::floor(static_cast<double>(k) / pacing[ip]));
  };
  const SecondFactor factor = svc.config().defenses.mfa.interceptionProbability > 0.0 ? SecondFactor::InterceptedOtp
                                                                                       : SecondFactor::None;

  AttackReport report;
  report.perIp.resize(pool);
  for (std::uint32_t i = 0; i < pool; ++i) report.perIp[i].ip = IpId{i};
  const auto banned_before = svc.banned_ip_count();
  const auto locked_before = svc.locked_account_count();

  std::priority_queue<Cursor, std::vector<Cursor>, LaterFirst> queue;
  for (std::uint32_t ip = 0; ip < pool && ip < total; ++ip) queue.push({tick_of(ip, 0), ip, ip, 0});

  std::vector<LoginAttempt> batch;
  std::unordered_set<std::uint32_t> compromised;
  Tick last = start - 1;
  while (!queue.empty()) {
    const Tick tick = queue.top().tick;
    batch.clear();
    while (!queue.empty() && queue.top().tick == tick) {
      const Cursor c = queue.top();
      queue.pop();
      auto cand = candidates->at(c.global);
      batch.push_back({tick, IpId{c.ip}, std::move(cand.username), std::move(cand.password), factor});
      const std::uint64_t next = c.global + pool;
      if (next < total && next > c.global) queue.push({tick_of(c.ip, c.k + 1), next, c.ip, c.k + 1});
    }

    const auto outcomes = svc.authenticate_batch(batch);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto& stats = report.perIp[to_index(batch[i].sourceIp)];
      ++report.outcomeHistogram[outcomes[i]];
      ++report.totalAttempts;
      if (outcomes[i] == LoginOutcome::IpBanned) {
        ++stats.attemptsBlocked;
        continue;
      }
      ++stats.attemptsDelivered;
      if (outcomes[i] == LoginOutcome::Success) {
        ++stats.successes;
        ++report.totalSuccesses;
        if (const auto id = svc.find(batch[i].username)) compromised.insert(to_index(*id));
      }
    }
    last = tick;
  }

  report.compromisedAccountIds.reserve(compromised.size());
  for (const auto id : compromised) report.compromisedAccountIds.push_back(AccountId{id});
  std::sort(report.compromisedAccountIds.begin(), report.compromisedAccountIds.end());
  report.bannedIpCount = svc.banned_ip_count() - banned_before;
  report.lockedAccountCount = svc.locked_account_count() - locked_before;
  clock.advance_to(last + 1);
  return report;
}

BreachCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open corpus file: " + path.string()});
  BreachCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> problems;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line_no == 1 && line == "username,password,sourceTag") continue;
    auto fields = split_fields(line);
    if (fields.size() != 3 || fields[0].empty()) {
      problems.push_back(path.string() + ":" + std::to_string(line_no) + ": expected username,password,sourceTag");
      continue;
    }
    corpus.entries.push_back({std::move(fields[0]), std::move(fields[1]), std::move(fields[2])});
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return corpus;
}

void write_corpus(const std::filesystem::path& path, const BreachCorpus& corpus) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path.string());
  out << "username,password,sourceTag\n";
  for (const auto& e : corpus.entries) out << e.username << ',' << e.password << ',' << e.sourceTag << '\n';
}

}  // namespace credsim
