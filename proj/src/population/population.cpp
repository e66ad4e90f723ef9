#include "credsim/population/population.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "credsim/attacker/tweak_rules.hpp"
#include "credsim/simcore/scenario.hpp"

namespace credsim {
namespace {

void validate(const PopulationSpec& spec) {
  std::vector<std::string> problems;
  const auto check_prob = [&](const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) problems.push_back(std::string(name) + ": must be in [0,1]");
  };
  check_prob("reuseRate", spec.reuseRate);
  check_prob("tweakRate", spec.tweakRate);
  check_prob("optInRelativesRate", spec.optInRelativesRate);
  check_prob("optInFamilyTreeRate", spec.optInFamilyTreeRate);
  check_prob("mfaEnrollmentRate", spec.mfaEnrollmentRate);
  if (spec.reuseRate + spec.tweakRate > 1.0) problems.emplace_back("reuseRate + tweakRate: must not exceed 1");
  if (spec.optInFamilyTreeRate > spec.optInRelativesRate) {
    problems.emplace_back("optInFamilyTreeRate: must not exceed optInRelativesRate");
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

}  // namespace

std::string_view to_string(ReuseClass c) {
  switch (c) {
    case ReuseClass::ExactReuse: return "ExactReuse";
    case ReuseClass::TweakedReuse: return "TweakedReuse";
    case ReuseClass::Unique: return "Unique";
  }
  return "Unique";
}

std::optional<ReuseClass> parse_reuse_class(std::string_view s) {
  if (s == "ExactReuse") return ReuseClass::ExactReuse;
  if (s == "TweakedReuse") return ReuseClass::TweakedReuse;
  if (s == "Unique") return ReuseClass::Unique;
  return std::nullopt;
}

std::string username_for(AccountId id) { return "user" + std::to_string(to_index(id)); }

std::uint32_t exact_count(std::uint32_t n, double rate) {
  const auto c = std::llround(static_cast<double>(n) * rate);
  return static_cast<std::uint32_t>(std::clamp<long long>(c, 0, n));
}

Population generate_population(const PopulationSpec& spec, const PasswordDistribution& dist, RngStream rng) {
  validate(spec);
  const std::uint32_t n = spec.size;

  Population pop;
  pop.accounts.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto& a = pop.accounts[i];
    a.id = AccountId{i};
    a.credential.username = username_for(a.id);
  }

  {
    auto reuse_rng = rng.derive("reuse");
    const auto order = shuffled_indices(n, reuse_rng);
    const std::uint32_t exact = exact_count(n, spec.reuseRate);
    const std::uint32_t tweaked = std::min(exact_count(n, spec.tweakRate), n - exact);
    for (std::uint32_t k = 0; k < exact; ++k) pop.accounts[order[k]].reuseClass = ReuseClass::ExactReuse;
    for (std::uint32_t k = exact; k < exact + tweaked; ++k) {
      pop.accounts[order[k]].reuseClass = ReuseClass::TweakedReuse;
    }
  }

  auto pw_rng = rng.derive("passwords");
  auto tweak_rng = rng.derive("tweak");
  std::vector<CorpusEntry> corpus;
  for (auto& a : pop.accounts) {
    const auto base = dist.sample(pw_rng);
    switch (a.reuseClass) {
      case ReuseClass::ExactReuse:
        a.credential.password = base;
        corpus.push_back({a.credential.username, base, std::string(kReuseSourceTag)});
        break;
      case ReuseClass::TweakedReuse: {
        const auto variants = tweak_variants(base);
        std::vector<std::size_t> effective;
        for (std::size_t r = 0; r < variants.size(); ++r) {
          if (variants[r] != base) effective.push_back(r);
        }
        a.credential.password = variants[effective[tweak_rng.uniform_below(effective.size())]];
        corpus.push_back({a.credential.username, base, std::string(kTweakSourceTag)});
        break;
      }
      case ReuseClass::Unique:
        a.credential.password = base;
        break;
    }
  }

  auto noise_rng = rng.derive("noise");
  for (std::uint32_t k = 0; k < spec.noiseEntries; ++k) {
    corpus.push_back({"leak" + std::to_string(k) + "@elsewhere.example", dist.sample(noise_rng),
                      std::string(kNoiseSourceTag)});
  }
  auto order_rng = rng.derive("corpus-order");
  order_rng.shuffle(std::span(corpus));
  pop.corpus.entries = std::move(corpus);

  {
    auto optin_rng = rng.derive("optin");
    const auto order = shuffled_indices(n, optin_rng);
    const std::uint32_t relatives = exact_count(n, spec.optInRelativesRate);
    const std::uint32_t family = std::min(exact_count(n, spec.optInFamilyTreeRate), relatives);
    for (std::uint32_t k = 0; k < relatives; ++k) pop.accounts[order[k]].optInRelatives = true;
    for (std::uint32_t k = 0; k < family; ++k) pop.accounts[order[k]].optInFamilyTree = true;
  }
  {
    auto mfa_rng = rng.derive("mfa");
    const auto order = shuffled_indices(n, mfa_rng);
    const std::uint32_t enrolled = exact_count(n, spec.mfaEnrollmentRate);
    for (std::uint32_t k = 0; k < enrolled; ++k) pop.accounts[order[k]].mfaEnrolled = true;
  }
  return pop;
}

Population generate_population(const ScenarioConfig& cfg, RngStream rng) {
  const auto dist = PasswordDistribution::resolve(cfg.passwordDistId, cfg.baseDir);
  return generate_population(cfg.population_spec(), dist, std::move(rng));
}

std::vector<std::string> check_population_invariants(const std::vector<UserAccount>& accounts,
                                                     const BreachCorpus& corpus) {
  std::vector<std::string> problems;
  std::unordered_map<std::string, std::vector<const CorpusEntry*>> by_user;
  for (const auto& e : corpus.entries) by_user[e.username].push_back(&e);

  std::unordered_set<std::string> usernames;
  for (const auto& a : accounts) {
    const auto& user = a.credential.username;
    const std::string who = "account " + std::to_string(to_index(a.id));
    if (user.empty()) problems.push_back(who + ": empty username");
    if (!usernames.insert(user).second) problems.push_back(who + ": duplicate username " + user);
    if (a.optInFamilyTree && !a.optInRelatives) problems.push_back(who + ": Family Tree without DNA Relatives");

    const auto it = by_user.find(user);
    const std::vector<const CorpusEntry*> none;
    const auto& entries = it == by_user.end() ? none : it->second;
    const auto exact = std::count_if(entries.begin(), entries.end(),
                                     [&](const CorpusEntry* e) { return e->password == a.credential.password; });
    const auto preimages = std::count_if(entries.begin(), entries.end(), [&](const CorpusEntry* e) {
      if (e->password.empty()) return false;
      const auto v = tweak_variants(e->password);
      return e->password != a.credential.password &&
             std::find(v.begin(), v.end(), a.credential.password) != v.end();
    });
    switch (a.reuseClass) {
      case ReuseClass::ExactReuse:
        if (exact != 1) problems.push_back(who + ": ExactReuse needs exactly one identical corpus entry");
        break;
      case ReuseClass::TweakedReuse:
        if (exact != 0 || preimages != 1) {
          problems.push_back(who + ": TweakedReuse needs exactly one tweak pre-image and no identical entry");
        }
        break;
      case ReuseClass::Unique:
        if (exact != 0) problems.push_back(who + ": Unique account appears verbatim in corpus");
        break;
    }
  }
  return problems;
}

}  // namespace credsim
