#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "credsim/attacker/attack.hpp"
#include "credsim/attacker/lockout_monte_carlo.hpp"
#include "credsim/attacker/tweak_rules.hpp"
#include "credsim/defenses/brute_force_math.hpp"
#include "credsim/population/password_distribution.hpp"
#include "test_support.hpp"

namespace credsim {
namespace {

using testing_support::simple_accounts;
using testing_support::TempDir;

Population population(std::uint32_t n, double reuse, double tweak, std::uint64_t seed, double mfa = 0.0) {
  PopulationSpec spec;
  spec.size = n;
  spec.reuseRate = reuse;
  spec.tweakRate = tweak;
  spec.mfaEnrollmentRate = mfa;
  spec.noiseEntries = n / 10;
  return generate_population(spec, PasswordDistribution::table1(), RngStream(seed).derive("population"));
}

std::vector<AccountId> ids_of(const Population& pop, std::initializer_list<ReuseClass> classes) {
  std::vector<AccountId> out;
  for (const auto& a : pop.accounts) {
    if (std::find(classes.begin(), classes.end(), a.reuseClass) != classes.end()) out.push_back(a.id);
  }
  return out;
}

AttackConfig stuffing(AttackStrategy s, std::uint32_t ips, std::uint64_t budget) {
  AttackConfig cfg;
  cfg.strategy = s;
  cfg.ipPoolSize = ips;
  cfg.attemptsPerIpBudget = budget;
  return cfg;
}

AttackReport attack(const Population& pop, const DefenseStack& d, const AttackConfig& cfg, std::uint64_t seed = 1,
                    const std::vector<std::string>* dictionary = nullptr) {
  AuthService svc(ServiceConfig{d}, pop.accounts, RngStream(seed).derive("service"));
  SimClock clock;
  return run_attack(svc, cfg, AttackInputs{&pop.corpus, dictionary}, clock, RngStream(seed).derive("attack"));
}

std::uint64_t histogram_total(const AttackReport& r) {
  std::uint64_t n = 0;
  for (const auto& [_, c] : r.outcomeHistogram) n += c;
  return n;
}

std::uint64_t outcome(const AttackReport& r, LoginOutcome o) {
  const auto it = r.outcomeHistogram.find(o);
  return it == r.outcomeHistogram.end() ? 0 : it->second;
}

TEST(Attack, StuffingCompromisesExactlyTheReusers) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto pop = population(2000, 0.1, 0.05, seed);
    const auto r = attack(pop, {}, stuffing(AttackStrategy::CredentialStuffing, 10, 1000), seed);
    EXPECT_EQ(r.compromisedAccountIds, ids_of(pop, {ReuseClass::ExactReuse}));
    EXPECT_EQ(r.totalSuccesses, 200u);
    EXPECT_EQ(r.totalAttempts, pop.corpus.entries.size());
  }
}

TEST(Attack, TweakedStuffingAlsoReachesTweakedReusers) {
  const auto pop = population(2000, 0.1, 0.05, 4);
  const auto r = attack(pop, {}, stuffing(AttackStrategy::TweakedStuffing, 10, 10000));
  EXPECT_EQ(r.compromisedAccountIds, ids_of(pop, {ReuseClass::ExactReuse, ReuseClass::TweakedReuse}));
  EXPECT_EQ(r.totalAttempts, pop.corpus.entries.size() * (1 + kTweakRuleCount));
}

TEST(Attack, FullMfaEnrollmentStopsStuffing) {
  const auto pop = population(2000, 0.1, 0.0, 5, 1.0);
  const auto r = attack(pop, {}, stuffing(AttackStrategy::CredentialStuffing, 10, 1000));
  EXPECT_EQ(r.totalSuccesses, 0u);
  EXPECT_EQ(outcome(r, LoginOutcome::MfaRequired), ids_of(pop, {ReuseClass::ExactReuse}).size());
}

TEST(Attack, HistogramConservesAttempts) {
  DefenseStack d;
  d.ban.enabled = true;
  d.lockout.enabled = true;
  d.rateLimit = {true, 5, 60};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto pop = population(1000, 0.2, 0.1, seed);
    const auto r = attack(pop, d, stuffing(AttackStrategy::TweakedStuffing, 7, 300), seed);
    EXPECT_EQ(histogram_total(r), r.totalAttempts);
    EXPECT_EQ(r.delivered() + r.blocked(), r.totalAttempts);
    EXPECT_EQ(r.blocked(), outcome(r, LoginOutcome::IpBanned));
    EXPECT_EQ(r.totalSuccesses, outcome(r, LoginOutcome::Success));
    EXPECT_LE(r.totalAttempts, 7u * 300u);
  }
}

TEST(Attack, BanNeverAddsSuccesses) {
  DefenseStack ban;
  ban.ban.enabled = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pop = population(500, 0.3, 0.1, seed);
    const auto cfg = stuffing(AttackStrategy::TweakedStuffing, 3, 1000);
    const auto open = attack(pop, {}, cfg, seed);
    const auto guarded = attack(pop, ban, cfg, seed);
    EXPECT_LE(guarded.totalSuccesses, open.totalSuccesses);
    EXPECT_TRUE(std::includes(open.compromisedAccountIds.begin(), open.compromisedAccountIds.end(),
                              guarded.compromisedAccountIds.begin(), guarded.compromisedAccountIds.end()));
  }
}

TEST(Attack, PacingSetsTicks) {
  const auto pop = population(100, 0.5, 0.0, 6);
  AuthService svc(ServiceConfig{}, pop.accounts, RngStream(1));
  SimClock clock{100};
  auto cfg = stuffing(AttackStrategy::CredentialStuffing, 2, 10);
  cfg.pacing = 0.5;
  const auto r = run_attack(svc, cfg, AttackInputs{&pop.corpus}, clock, RngStream(1));
  EXPECT_EQ(r.totalAttempts, 20u);
  // Attempt k of each IP fires at floor(k / 0.5) = 2k; the last is k = 9.
  EXPECT_EQ(clock.now(), 100 + 18 + 1);
}

TEST(Keyspace, EnumeratesLexicographically) {
  Keyspace pin;
  EXPECT_EQ(pin.size(), 1000000u);
  EXPECT_EQ(pin.guess(0), "000000");
  EXPECT_EQ(pin.guess(123456), "123456");
  EXPECT_EQ(pin.guess(999999), "999999");
  Keyspace ab{"ab", 3};
  EXPECT_EQ(ab.size(), 8u);
  EXPECT_EQ(ab.guess(5), "bab");
  EXPECT_EQ((Keyspace{"abcdefghijklmnopqrstuvwxyz", 20}.size()), std::numeric_limits<std::uint64_t>::max());
}

TEST(Attack, BruteForceFindsThePinAtItsIndex) {
  auto accts = simple_accounts(1);
  accts[0].credential.password = "000042";
  AuthService svc(ServiceConfig{}, accts, RngStream(1));
  SimClock clock;
  AttackConfig cfg;
  cfg.strategy = AttackStrategy::BruteForce;
  cfg.ipPoolSize = 4;
  cfg.attemptsPerIpBudget = 20;
  const auto r = run_attack(svc, cfg, {}, clock, RngStream(1));
  EXPECT_EQ(r.totalAttempts, 80u);
  EXPECT_EQ(r.totalSuccesses, 1u);
  EXPECT_EQ(r.perIp[42 % 4].successes, 1u);
  EXPECT_EQ(outcome(r, LoginOutcome::WrongPassword), 79u);
}

TEST(Attack, DictionaryIsPasswordMajor) {
  auto accts = simple_accounts(3);
  accts[0].credential.password = "123456";
  accts[2].credential.password = "qwerty";
  AuthService svc(ServiceConfig{}, accts, RngStream(1));
  SimClock clock;
  const std::vector<std::string> words = {"123456", "password", "qwerty"};
  auto cfg = stuffing(AttackStrategy::Dictionary, 1, 4);
  const auto r = run_attack(svc, cfg, AttackInputs{nullptr, &words}, clock, RngStream(1));
  EXPECT_EQ(r.totalAttempts, 4u);
  EXPECT_EQ(r.compromisedAccountIds, std::vector{AccountId{0}});
  EXPECT_THROW(run_attack(svc, cfg, {}, clock, RngStream(1)), std::invalid_argument);
}

TEST(Attack, TargetsRestrictCandidates) {
  const auto pop = population(1000, 1.0, 0.0, 7);
  auto cfg = stuffing(AttackStrategy::CredentialStuffing, 1, 1000);
  cfg.targetUsernames = {"user3", "user9"};
  const auto r = attack(pop, {}, cfg);
  EXPECT_EQ(r.compromisedAccountIds, (std::vector{AccountId{3}, AccountId{9}}));
  EXPECT_EQ(r.totalAttempts, 2u);
}

TEST(Attack, Deterministic) {
  DefenseStack d;
  d.ban.enabled = true;
  const auto pop = population(800, 0.2, 0.1, 8);
  auto cfg = stuffing(AttackStrategy::TweakedStuffing, 5, 200);
  cfg.pacingJitter = 0.3;
  const auto a = attack(pop, d, cfg, 9);
  const auto b = attack(pop, d, cfg, 9);
  EXPECT_EQ(a.outcomeHistogram, b.outcomeHistogram);
  EXPECT_EQ(a.compromisedAccountIds, b.compromisedAccountIds);
  EXPECT_EQ(a.delivered(), b.delivered());
}

TEST(Attack, InvalidConfigListsEveryField) {
  AttackConfig cfg;
  cfg.ipPoolSize = 0;
  cfg.pacing = 0;
  cfg.pacingJitter = 1.0;
  try {
    cfg.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems().size(), 3u);
  }
}

TEST(Corpus, FileRoundTrip) {
  TempDir dir("corpus");
  const auto pop = population(300, 0.2, 0.1, 10);
  write_corpus(dir / "c.csv", pop.corpus);
  const auto back = load_corpus(dir / "c.csv");
  ASSERT_EQ(back.entries.size(), pop.corpus.entries.size());
  for (std::size_t i = 0; i < back.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].username, pop.corpus.entries[i].username);
    EXPECT_EQ(back.entries[i].password, pop.corpus.entries[i].password);
    EXPECT_EQ(back.entries[i].sourceTag, pop.corpus.entries[i].sourceTag);
  }
  EXPECT_THROW(load_corpus(dir / "missing.csv"), ConfigError);
}

TEST(LockoutMonteCarlo, MatchesClosedFormWithinThreeSigma) {
  LockoutBruteForceSpec spec;
  spec.trials = 4000;
  spec.pinDigits = 4;
  spec.attemptsPerWindow = 3;
  spec.windows = 365;
  const auto r = simulate_lockout_brute_force(spec, RngStream(5).derive("mc"));
  // Sequential enumeration without repeats: success iff the PIN's index is below a * w.
  const double oracle = std::min(1.0, 3.0 * 365.0 / 10000.0);
  EXPECT_DOUBLE_EQ(r.analyticProbability, oracle);
  const double sigma = std::sqrt(oracle * (1 - oracle) / static_cast<double>(spec.trials));
  EXPECT_NEAR(r.success_rate(), oracle, 3 * sigma);
  EXPECT_EQ(r.trials, spec.trials);
  EXPECT_GT(r.lockedRejections, 0u);
}

}  // namespace
}  // namespace credsim
