#include <algorithm>

#include <gtest/gtest.h>

#include "credsim/simcore/scenario.hpp"
#include "test_support.hpp"

namespace credsim {
namespace {

using testing_support::scenario_path;

bool has_problem(const ConfigError& e, const std::string& needle) {
  return std::any_of(e.problems().begin(), e.problems().end(),
                     [&](const std::string& p) { return p.find(needle) != std::string::npos; });
}

ConfigError parse_error(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ConfigError for " << text;
  return ConfigError({});
}

TEST(Scenario, MinimalDefaults) {
  const auto cfg = parse_scenario(R"({"populationSize": 10})");
  EXPECT_EQ(cfg.populationSize, 10u);
  EXPECT_EQ(cfg.passwordDistId, "table1");
  EXPECT_EQ(cfg.replications, 1u);
  EXPECT_FALSE(cfg.attack.enabled);
  EXPECT_FALSE(cfg.graph.enabled);
  EXPECT_FALSE(cfg.defenses.ban.enabled);
  EXPECT_FALSE(cfg.defenses.lockout.enabled);
  EXPECT_FALSE(cfg.defenses.rateLimit.enabled);
  EXPECT_EQ(cfg.defenses.ban.config.maxRetry, 3u);
  EXPECT_EQ(cfg.defenses.ban.config.findtime, 600);
  EXPECT_EQ(cfg.defenses.ban.config.bantime, 86400);
  EXPECT_EQ(cfg.defenses.alerts.resetProbability, 0.26);
  EXPECT_EQ(cfg.defenses.mfa.interceptionProbability, 0.0);
}

TEST(Scenario, PresentStanzasDefaultToEnabled) {
  const auto cfg = parse_scenario(R"({"populationSize": 10, "optInRelativesRate": 1.0,
                                      "attack": {}, "graph": {"meanDegree": 2}})");
  EXPECT_TRUE(cfg.attack.enabled);
  EXPECT_TRUE(cfg.graph.enabled);
  EXPECT_EQ(cfg.attack.pacing, 1.0);
  EXPECT_TRUE(cfg.attack.targetUsernames.empty());
}

TEST(Scenario, UnknownKeysAreHardErrors) {
  EXPECT_TRUE(has_problem(parse_error(R"({"populationSise": 10})"), "populationSise: unknown key"));
  EXPECT_TRUE(has_problem(parse_error(R"({"defenses": {"ban": {"maxRetri": 3}}})"),
                          "defenses.ban.maxRetri: unknown key"));
  EXPECT_TRUE(has_problem(parse_error(R"({"attack": {"keyspace": {"size": 3}}})"),
                          "attack.keyspace.size: unknown key"));
}

TEST(Scenario, EveryProblemIsReported) {
  const auto e = parse_error(R"({"reuseRate": "high", "replications": -1, "bogus": true,
                                 "graph": {"model": "SmallWorld"}})");
  EXPECT_TRUE(has_problem(e, "reuseRate"));
  EXPECT_TRUE(has_problem(e, "replications"));
  EXPECT_TRUE(has_problem(e, "bogus"));
  EXPECT_TRUE(has_problem(e, "graph.model"));
  EXPECT_GE(e.problems().size(), 4u);
}

TEST(Scenario, ValueRangesChecked) {
  EXPECT_TRUE(has_problem(parse_error(R"({"reuseRate": 0.7, "tweakRate": 0.4})"), "reuseRate + tweakRate"));
  EXPECT_TRUE(has_problem(parse_error(R"({"optInRelativesRate": 1.2})"), "optInRelativesRate"));
  EXPECT_TRUE(has_problem(parse_error(R"({"defenses": {"ban": {"maxRetry": 0}}})"), "defenses.ban.maxRetry"));
  EXPECT_TRUE(has_problem(parse_error(R"({"attack": {"ipPoolSize": 0}})"), "ipPoolSize"));
  EXPECT_TRUE(has_problem(parse_error(R"({"populationSize": 10, "optInRelativesRate": 0.5,
                                          "graph": {"meanDegree": 5}})"),
                          "graph.meanDegree"));
}

TEST(Scenario, NotJson) {
  EXPECT_TRUE(has_problem(parse_error("{populationSize: 3"), "not valid JSON"));
  EXPECT_TRUE(has_problem(parse_error("[1, 2]"), "must be an object"));
}

TEST(Scenario, MissingFileNamesThePath) {
  try {
    load_scenario("/nonexistent/dir/nothing.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/nothing.json"), std::string::npos);
  }
}

TEST(Scenario, MfaEnrollmentAcceptedInEitherPlace) {
  EXPECT_EQ(parse_scenario(R"({"mfaEnrollmentRate": 0.4})").mfaEnrollmentRate, 0.4);
  const auto nested = parse_scenario(R"({"defenses": {"mfa": {"enrollmentRate": 0.3}}})");
  EXPECT_EQ(nested.mfaEnrollmentRate, 0.3);
  EXPECT_EQ(nested.defenses.mfa.enrollmentRate, 0.3);
  EXPECT_NO_THROW(parse_scenario(R"({"mfaEnrollmentRate": 0.3, "defenses": {"mfa": {"enrollmentRate": 0.3}}})"));
  EXPECT_TRUE(has_problem(parse_error(R"({"mfaEnrollmentRate": 0.3, "defenses": {"mfa": {"enrollmentRate": 0.5}}})"),
                          "conflicts"));
}

TEST(Scenario, PolicyPresetsAndExplicitFields) {
  const auto preset = parse_scenario(R"({"defenses": {"policy": {"name": "3class12"}}})");
  EXPECT_EQ(preset.defenses.policy.policy.minLength, 12u);
  EXPECT_EQ(preset.defenses.policy.policy.minClasses, 3u);
  EXPECT_EQ(preset.defenses.policy.policy.classMode, ClassMode::FourClass);

  const auto custom = parse_scenario(
      R"({"defenses": {"policy": {"name": "custom", "minLength": 8, "minClasses": 2,
                                   "classMode": "lettersDigitsSymbols", "breachCheck": true}}})");
  EXPECT_EQ(custom.defenses.policy.policy.minLength, 8u);
  EXPECT_EQ(custom.defenses.policy.policy.classMode, ClassMode::LettersDigitsSymbols);
  EXPECT_TRUE(custom.defenses.policy.breachCheck);

  EXPECT_TRUE(has_problem(parse_error(R"({"defenses": {"policy": {"name": "strong"}}})"), "unknown policy"));
  EXPECT_TRUE(has_problem(
      parse_error(R"({"defenses": {"policy": {"name": "x", "minClasses": 4, "classMode": "lettersDigitsSymbols"}}})"),
      "minClasses"));
}

TEST(Scenario, TargetUsernames) {
  const auto all = parse_scenario(R"({"attack": {"targetUsernames": "All"}})");
  EXPECT_TRUE(all.attack.targetUsernames.empty());
  const auto some = parse_scenario(R"({"attack": {"targetUsernames": ["user0", "user5"]}})");
  EXPECT_EQ(some.attack.targetUsernames, (std::vector<std::string>{"user0", "user5"}));
  EXPECT_TRUE(has_problem(parse_error(R"({"attack": {"targetUsernames": 3}})"), "targetUsernames"));
}

TEST(Scenario, CanonicalJsonRoundTrips) {
  const auto cfg = load_scenario(scenario_path("23andme"));
  const auto text = scenario_to_json(cfg);
  EXPECT_EQ(scenario_to_json(parse_scenario(text)), text);
}

TEST(Scenario, ShippedScenariosLoad) {
  for (const auto* name : {"breach-baseline", "fail2ban-honeypot", "alert-response", "23andme"}) {
    SCOPED_TRACE(name);
    const auto cfg = load_scenario(scenario_path(name));
    EXPECT_EQ(cfg.name, name);
    EXPECT_TRUE(cfg.attack.enabled || cfg.defenses.alerts.enabled);
  }
  const auto t = load_scenario(scenario_path("23andme"));
  EXPECT_EQ(t.populationSize, 14000u);
  EXPECT_EQ(exact_count(t.populationSize, t.reuseRate), 14u);
  const auto f = load_scenario(scenario_path("fail2ban-honeypot"));
  EXPECT_EQ(f.attack.ipPoolSize, 100u);
  EXPECT_EQ(f.attack.attemptsPerIpBudget, 101u);
  EXPECT_TRUE(f.defenses.ban.enabled);
}

}  // namespace
}  // namespace credsim
