#include "credsim/simcore/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace credsim {
namespace {

using nlohmann::json;

// Walks one JSON object, collecting every type or key problem under a dotted path.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, std::vector<std::string>& problems)
      : obj_(obj), path_(std::move(path)), problems_(problems) {
    if (!obj_.is_object()) problem("", "must be an object");
  }

  bool valid() const { return obj_.is_object(); }
  bool has(const char* key) const { return valid() && obj_.contains(key); }

  void get(const char* key, bool& out) {
    if (const auto* v = take(key)) {
      if (v->is_boolean()) out = v->get<bool>();
      else problem(key, "must be a boolean");
    }
  }

  void get(const char* key, double& out) {
    if (const auto* v = take(key)) {
      if (v->is_number()) out = v->get<double>();
      else problem(key, "must be a number");
    }
  }

  void get(const char* key, std::string& out) {
    if (const auto* v = take(key)) {
      if (v->is_string()) out = v->get<std::string>();
      else problem(key, "must be a string");
    }
  }

  template <typename Int>
    requires std::is_integral_v<Int>
  void get_count(const char* key, Int& out) {
    if (const auto* v = take(key)) {
      if (v->is_number_unsigned() && v->get<std::uint64_t>() <= std::numeric_limits<Int>::max()) {
        out = static_cast<Int>(v->get<std::uint64_t>());
      } else if (v->is_number_integer() && v->get<std::int64_t>() >= 0 &&
                 static_cast<std::uint64_t>(v->get<std::int64_t>()) <= std::numeric_limits<Int>::max()) {
        out = static_cast<Int>(v->get<std::int64_t>());
      } else {
        problem(key, "must be a non-negative integer in range");
      }
    }
  }

  void get_seconds(const char* key, Seconds& out) {
    if (const auto* v = take(key)) {
      if (v->is_number_integer()) out = v->get<Seconds>();
      else problem(key, "must be an integer number of seconds");
    }
  }

  const json* take(const char* key) {
    seen_.insert(key);
    if (!valid()) return nullptr;
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  ObjectReader child(const char* key) {
    const auto* v = take(key);
    static const json kEmpty = json::object();
    return ObjectReader(v ? *v : kEmpty, join(key), problems_);
  }

  void problem(const std::string& key, const std::string& what) { problems_.push_back(join(key) + ": " + what); }

  /// Reports every key that was never asked for.
  void finish() {
    if (!valid()) return;
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.contains(key)) problems_.push_back(join(key) + ": unknown key");
    }
  }

 private:
  std::string join(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& obj_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> seen_;
};

void read_defenses(ObjectReader r, ScenarioConfig& cfg, bool& mfa_rate_set, double& mfa_rate) {
  auto& d = cfg.defenses;
  {
    auto b = r.child("ban");
    b.get("enabled", d.ban.enabled);
    b.get_count("maxRetry", d.ban.config.maxRetry);
    b.get_seconds("findtime", d.ban.config.findtime);
    b.get_seconds("bantime", d.ban.config.bantime);
    b.finish();
  }
  {
    auto rl = r.child("rateLimit");
    rl.get("enabled", d.rateLimit.enabled);
    rl.get_count("maxAttempts", d.rateLimit.maxAttempts);
    rl.get_seconds("windowSeconds", d.rateLimit.windowSeconds);
    rl.finish();
  }
  {
    auto l = r.child("lockout");
    l.get("enabled", d.lockout.enabled);
    l.get_count("maxFailures", d.lockout.maxFailures);
    l.get_seconds("lockSeconds", d.lockout.lockSeconds);
    l.finish();
  }
  {
    auto p = r.child("policy");
    std::string name = d.policy.policy.name;
    p.get("name", name);
    if (const auto preset = PasswordPolicy::preset(name)) {
      d.policy.policy = *preset;
    } else if (!p.has("minLength") && !p.has("minClasses")) {
      p.problem("name", "unknown policy preset '" + name + "'");
    }
    d.policy.policy.name = name;
    p.get_count("minLength", d.policy.policy.minLength);
    p.get_count("minClasses", d.policy.policy.minClasses);
    std::string mode = d.policy.policy.classMode == ClassMode::FourClass ? "fourClass" : "lettersDigitsSymbols";
    p.get("classMode", mode);
    if (mode == "fourClass") d.policy.policy.classMode = ClassMode::FourClass;
    else if (mode == "lettersDigitsSymbols") d.policy.policy.classMode = ClassMode::LettersDigitsSymbols;
    else p.problem("classMode", "must be 'fourClass' or 'lettersDigitsSymbols'");
    p.get("breachCheck", d.policy.breachCheck);
    p.finish();
  }
  {
    auto a = r.child("alerts");
    a.get("enabled", d.alerts.enabled);
    a.get("resetProbability", d.alerts.resetProbability);
    if (const auto* tags = a.take("tagResetProbability")) {
      if (!tags->is_object()) {
        a.problem("tagResetProbability", "must be an object of tag -> probability");
      } else {
        for (const auto& [tag, v] : tags->items()) {
          if (!v.is_number()) a.problem("tagResetProbability." + tag, "must be a number");
          else d.alerts.tagResetProbability[tag] = v.get<double>();
        }
      }
    }
    a.finish();
  }
  {
    auto m = r.child("mfa");
    if (m.has("enrollmentRate")) {
      mfa_rate_set = true;
      m.get("enrollmentRate", mfa_rate);
    }
    m.get("interceptionProbability", d.mfa.interceptionProbability);
    m.get("mandatoryTwoStep", d.mfa.mandatoryTwoStep);
    m.finish();
  }
  r.finish();
}

void read_attack(ObjectReader r, AttackConfig& a) {
  a.enabled = true;
  r.get("enabled", a.enabled);
  std::string strategy(to_string(a.strategy));
  r.get("strategy", strategy);
  if (const auto s = parse_attack_strategy(strategy)) a.strategy = *s;
  else r.problem("strategy", "must be BruteForce, Dictionary, CredentialStuffing or TweakedStuffing");
  r.get_count("ipPoolSize", a.ipPoolSize);
  r.get_count("attemptsPerIpBudget", a.attemptsPerIpBudget);
  r.get("pacing", a.pacing);
  r.get("pacingJitter", a.pacingJitter);
  if (const auto* t = r.take("targetUsernames")) {
    if (t->is_string() && t->get<std::string>() == "All") {
      a.targetUsernames.clear();
    } else if (t->is_array() && std::all_of(t->begin(), t->end(), [](const json& e) { return e.is_string(); })) {
      a.targetUsernames = t->get<std::vector<std::string>>();
    } else {
      r.problem("targetUsernames", "must be \"All\" or a list of usernames");
    }
  }
  r.get("corpusRef", a.corpusRef);
  r.get("dictionaryRef", a.dictionaryRef);
  {
    auto k = r.child("keyspace");
    k.get("alphabet", a.keyspace.alphabet);
    k.get_count("length", a.keyspace.length);
    k.finish();
  }
  r.finish();
}

void read_graph(ObjectReader r, GraphSpec& g) {
  g.enabled = true;
  r.get("enabled", g.enabled);
  std::string model(to_string(g.model));
  r.get("model", model);
  if (const auto m = parse_graph_model(model)) g.model = *m;
  else r.problem("model", "must be ErdosRenyi or ConfigurationModel");
  r.get("meanDegree", g.meanDegree);
  r.get("fieldShareRate", g.fieldShareRate);
  r.finish();
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

PopulationSpec ScenarioConfig::population_spec() const {
  return {populationSize, reuseRate, tweakRate, optInRelativesRate, optInFamilyTreeRate, mfaEnrollmentRate,
          noiseEntries};
}

void ScenarioConfig::validate() const {
  std::vector<std::string> problems;
  const auto prob = [&](const std::string& field, double v) {
    if (!is_probability(v)) problems.push_back(field + ": must be in [0,1]");
  };
  const auto positive = [&](const std::string& field, auto v) {
    if (!(v > 0)) problems.push_back(field + ": must be > 0");
  };

  if (name.empty()) problems.emplace_back("name: must not be empty");
  if (passwordDistId.empty()) problems.emplace_back("passwordDistId: must not be empty");
  prob("reuseRate", reuseRate);
  prob("tweakRate", tweakRate);
  prob("optInRelativesRate", optInRelativesRate);
  prob("optInFamilyTreeRate", optInFamilyTreeRate);
  prob("mfaEnrollmentRate", mfaEnrollmentRate);
  if (is_probability(reuseRate) && is_probability(tweakRate) && reuseRate + tweakRate > 1.0) {
    problems.emplace_back("reuseRate + tweakRate: must not exceed 1");
  }
  if (optInFamilyTreeRate > optInRelativesRate) {
    problems.emplace_back("optInFamilyTreeRate: must not exceed optInRelativesRate");
  }

  const auto& d = defenses;
  positive("defenses.ban.maxRetry", d.ban.config.maxRetry);
  positive("defenses.ban.findtime", d.ban.config.findtime);
  positive("defenses.ban.bantime", d.ban.config.bantime);
  positive("defenses.rateLimit.maxAttempts", d.rateLimit.maxAttempts);
  positive("defenses.rateLimit.windowSeconds", d.rateLimit.windowSeconds);
  positive("defenses.lockout.maxFailures", d.lockout.maxFailures);
  positive("defenses.lockout.lockSeconds", d.lockout.lockSeconds);
  const std::size_t classes = d.policy.policy.classMode == ClassMode::FourClass ? 4 : 3;
  if (d.policy.policy.minClasses > classes) {
    problems.push_back("defenses.policy.minClasses: must be <= " + std::to_string(classes));
  }
  prob("defenses.alerts.resetProbability", d.alerts.resetProbability);
  for (const auto& [tag, p] : d.alerts.tagResetProbability) prob("defenses.alerts.tagResetProbability." + tag, p);
  prob("defenses.mfa.interceptionProbability", d.mfa.interceptionProbability);

  if (attack.enabled) {
    try {
      attack.validate();
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
    if (attack.strategy == AttackStrategy::Dictionary && attack.dictionaryRef.empty()) {
      problems.emplace_back("attack.dictionaryRef: required for Dictionary");
    }
    if ((attack.strategy == AttackStrategy::CredentialStuffing ||
         attack.strategy == AttackStrategy::TweakedStuffing) &&
        attack.corpusRef.empty()) {
      problems.emplace_back("attack.corpusRef: required for stuffing");
    }
  }

  if (graph.enabled) {
    if (!(graph.meanDegree >= 0.0) || !std::isfinite(graph.meanDegree)) {
      problems.emplace_back("graph.meanDegree: must be >= 0");
    } else {
      const auto opted = exact_count(populationSize, optInRelativesRate);
      if (opted > 0 && graph.meanDegree >= static_cast<double>(opted)) {
        problems.push_back("graph.meanDegree: must be below the opted-in count " + std::to_string(opted));
      }
    }
    prob("graph.fieldShareRate", graph.fieldShareRate);
  }

  if (!problems.empty()) throw ConfigError(std::move(problems));
}

ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("scenario is not valid JSON: ") + e.what()});
  }

  ScenarioConfig cfg;
  cfg.baseDir = base_dir;
  std::vector<std::string> problems;
  ObjectReader r(root, "", problems);
  r.get("name", cfg.name);
  r.get_count("populationSize", cfg.populationSize);
  r.get("passwordDistId", cfg.passwordDistId);
  r.get("reuseRate", cfg.reuseRate);
  r.get("tweakRate", cfg.tweakRate);
  r.get("optInRelativesRate", cfg.optInRelativesRate);
  r.get("optInFamilyTreeRate", cfg.optInFamilyTreeRate);
  const bool top_mfa = r.has("mfaEnrollmentRate");
  r.get("mfaEnrollmentRate", cfg.mfaEnrollmentRate);
  r.get_count("noiseEntries", cfg.noiseEntries);
  r.get_count("replications", cfg.replications);
  r.get_count("rootSeed", cfg.rootSeed);

  bool nested_mfa = false;
  double nested_rate = 0.0;
  if (r.has("defenses")) read_defenses(r.child("defenses"), cfg, nested_mfa, nested_rate);
  else r.take("defenses");
  if (nested_mfa) {
    if (top_mfa && nested_rate != cfg.mfaEnrollmentRate) {
      problems.emplace_back("defenses.mfa.enrollmentRate: conflicts with mfaEnrollmentRate");
    }
    cfg.mfaEnrollmentRate = nested_rate;
  }
  cfg.defenses.mfa.enrollmentRate = cfg.mfaEnrollmentRate;

  if (r.has("attack")) read_attack(r.child("attack"), cfg.attack);
  else r.take("attack");
  if (r.has("graph")) read_graph(r.child("graph"), cfg.graph);
  else r.take("graph");
  r.finish();

  if (!problems.empty()) throw ConfigError(std::move(problems));
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read scenario file: " + path.string()});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  const auto& d = cfg.defenses;
  json tags = json::object();
  for (const auto& [tag, p] : d.alerts.tagResetProbability) tags[tag] = p;
  json targets = cfg.attack.targetUsernames.empty() ? json("All") : json(cfg.attack.targetUsernames);
  const json j = {
      {"name", cfg.name},
      {"populationSize", cfg.populationSize},
      {"passwordDistId", cfg.passwordDistId},
      {"reuseRate", cfg.reuseRate},
      {"tweakRate", cfg.tweakRate},
      {"optInRelativesRate", cfg.optInRelativesRate},
      {"optInFamilyTreeRate", cfg.optInFamilyTreeRate},
      {"mfaEnrollmentRate", cfg.mfaEnrollmentRate},
      {"noiseEntries", cfg.noiseEntries},
      {"replications", cfg.replications},
      {"rootSeed", cfg.rootSeed},
      {"defenses",
       {
           {"ban",
            {{"enabled", d.ban.enabled},
             {"maxRetry", d.ban.config.maxRetry},
             {"findtime", d.ban.config.findtime},
             {"bantime", d.ban.config.bantime}}},
           {"rateLimit",
            {{"enabled", d.rateLimit.enabled},
             {"maxAttempts", d.rateLimit.maxAttempts},
             {"windowSeconds", d.rateLimit.windowSeconds}}},
           {"lockout",
            {{"enabled", d.lockout.enabled},
             {"maxFailures", d.lockout.maxFailures},
             {"lockSeconds", d.lockout.lockSeconds}}},
           {"policy",
            {{"name", d.policy.policy.name},
             {"minLength", d.policy.policy.minLength},
             {"minClasses", d.policy.policy.minClasses},
             {"classMode",
              d.policy.policy.classMode == ClassMode::FourClass ? "fourClass" : "lettersDigitsSymbols"},
             {"breachCheck", d.policy.breachCheck}}},
           {"alerts",
            {{"enabled", d.alerts.enabled},
             {"resetProbability", d.alerts.resetProbability},
             {"tagResetProbability", tags}}},
           {"mfa",
            {{"enrollmentRate", cfg.mfaEnrollmentRate},
             {"interceptionProbability", d.mfa.interceptionProbability},
             {"mandatoryTwoStep", d.mfa.mandatoryTwoStep}}},
       }},
      {"attack",
       {{"enabled", cfg.attack.enabled},
        {"strategy", std::string(to_string(cfg.attack.strategy))},
        {"ipPoolSize", cfg.attack.ipPoolSize},
        {"attemptsPerIpBudget", cfg.attack.attemptsPerIpBudget},
        {"pacing", cfg.attack.pacing},
        {"pacingJitter", cfg.attack.pacingJitter},
        {"targetUsernames", targets},
        {"corpusRef", cfg.attack.corpusRef},
        {"dictionaryRef", cfg.attack.dictionaryRef},
        {"keyspace", {{"alphabet", cfg.attack.keyspace.alphabet}, {"length", cfg.attack.keyspace.length}}}}},
      {"graph",
       {{"enabled", cfg.graph.enabled},
        {"model", std::string(to_string(cfg.graph.model))},
        {"meanDegree", cfg.graph.meanDegree},
        {"fieldShareRate", cfg.graph.fieldShareRate}}},
  };
  return j.dump(2);
}

}  // namespace credsim
