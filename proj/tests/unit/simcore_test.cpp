#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "credsim/simcore/clock.hpp"
#include "credsim/simcore/rng.hpp"
#include "credsim/simcore/runner.hpp"

namespace credsim {
namespace {

double chi2_critical(double df, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(df), alpha));
}

TEST(SimClock, AdvanceAddsSeconds) {
  EXPECT_EQ(advance(SimClock{0}, 600).now(), 600);
  EXPECT_EQ(advance(SimClock{5}, 0).now(), 5);
  EXPECT_EQ(advance(SimClock{0}, 86400).now(), 86400);
}

TEST(SimClock, NegativeStepRejected) {
  SimClock c{10};
  EXPECT_THROW(c.advance(-1), std::invalid_argument);
  EXPECT_EQ(c.now(), 10);
}

TEST(SimClock, AdvanceToNeverMovesBack) {
  SimClock c{10};
  c.advance_to(5);
  EXPECT_EQ(c.now(), 10);
  c.advance_to(12);
  EXPECT_EQ(c.now(), 12);
}

TEST(RngStream, DeriveAppendsLabel) {
  const RngStream root(42);
  const auto s = root.derive("population");
  EXPECT_EQ(s.root_seed(), 42u);
  EXPECT_EQ(s.path(), std::vector<std::string>{"population"});
  EXPECT_TRUE(root.path().empty());
}

TEST(RngStream, SameSeedAndPathGiveIdenticalDraws) {
  auto a = RngStream(42).derive("population");
  auto b = RngStream(42, {"population"});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DifferentPathsOrSeedsDiverge) {
  auto a = RngStream(42).derive("a");
  auto b = RngStream(42).derive("b");
  auto c = RngStream(43).derive("a");
  auto ab = RngStream(42).derive("a").derive("b");
  auto ba = RngStream(42).derive("b").derive("a");
  int same_ab = 0, same_ac = 0, same_order = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    same_ab += x == b.next_u64();
    same_ac += x == c.next_u64();
    same_order += ab.next_u64() == ba.next_u64();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
  EXPECT_EQ(same_order, 0);
}

TEST(RngStream, LabelBoundariesMatter) {
  auto a = RngStream(1).derive("ab").derive("c");
  auto b = RngStream(1).derive("a").derive("bc");
  EXPECT_NE(a.next_u64(), b.next_u64());
}

TEST(RngStream, SiblingStreamsPassChiSquareIndependence) {
  constexpr int kBins = 10;
  constexpr int kDraws = 10000;
  auto a = RngStream(42).derive("a");
  auto b = RngStream(42).derive("b");
  std::array<std::array<double, kBins>, kBins> table{};
  std::array<double, kBins> rows{}, cols{};
  for (int i = 0; i < kDraws; ++i) {
    const auto x = static_cast<int>(a.uniform01() * kBins);
    const auto y = static_cast<int>(b.uniform01() * kBins);
    table[x][y] += 1;
    rows[x] += 1;
    cols[y] += 1;
  }
  double stat = 0;
  for (int x = 0; x < kBins; ++x) {
    for (int y = 0; y < kBins; ++y) {
      const double expected = rows[x] * cols[y] / kDraws;
      stat += (table[x][y] - expected) * (table[x][y] - expected) / expected;
    }
  }
  EXPECT_LT(stat, chi2_critical((kBins - 1) * (kBins - 1), 0.01));
}

TEST(RngStream, Uniform01IsUniform) {
  constexpr int kBins = 20;
  constexpr int kDraws = 100000;
  auto s = RngStream(7).derive("uniform");
  std::array<double, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    counts[static_cast<int>(u * kBins)] += 1;
  }
  const double expected = static_cast<double>(kDraws) / kBins;
  double stat = 0;
  for (const auto c : counts) stat += (c - expected) * (c - expected) / expected;
  EXPECT_LT(stat, chi2_critical(kBins - 1, 0.01));
}

TEST(RngStream, UniformBelowStaysInRange) {
  auto s = RngStream(3).derive("bounded");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = s.uniform_below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(s.uniform_below(1), 0u);
  EXPECT_THROW(s.uniform_below(0), std::invalid_argument);
}

TEST(RngStream, BernoulliEdges) {
  auto s = RngStream(3).derive("coin");
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(s.bernoulli(0.0));
    ASSERT_TRUE(s.bernoulli(1.0));
  }
}

TEST(RngStream, ShuffledIndicesIsAPermutation) {
  auto s = RngStream(9).derive("perm");
  const auto p = shuffled_indices(1000, s);
  std::set<std::uint32_t> uniq(p.begin(), p.end());
  EXPECT_EQ(uniq.size(), 1000u);
  EXPECT_EQ(*uniq.rbegin(), 999u);
  EXPECT_TRUE(shuffled_indices(0, s).empty());
}

ScenarioConfig small_scenario() {
  ScenarioConfig cfg;
  cfg.name = "small";
  cfg.populationSize = 500;
  cfg.reuseRate = 0.2;
  cfg.tweakRate = 0.1;
  cfg.optInRelativesRate = 0.6;
  cfg.optInFamilyTreeRate = 0.2;
  cfg.noiseEntries = 50;
  cfg.replications = 4;
  cfg.rootSeed = 11;
  cfg.attack.enabled = true;
  cfg.attack.strategy = AttackStrategy::TweakedStuffing;
  cfg.attack.ipPoolSize = 10;
  cfg.attack.attemptsPerIpBudget = 200;
  cfg.defenses.ban.enabled = true;
  cfg.defenses.alerts.enabled = true;
  cfg.graph.enabled = true;
  cfg.graph.meanDegree = 8;
  return cfg;
}

TEST(RunScenario, ZeroReplicationsGiveEmptyReport) {
  auto cfg = small_scenario();
  cfg.replications = 0;
  const auto r = run_scenario(cfg);
  EXPECT_TRUE(r.perReplication.empty());
  EXPECT_TRUE(r.aggregate.empty());
}

TEST(RunScenario, InvalidConfigListsEveryField) {
  auto cfg = small_scenario();
  cfg.reuseRate = 1.5;
  cfg.optInFamilyTreeRate = 0.9;
  try {
    run_scenario(cfg);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const auto& p = e.problems();
    const auto mentions = [&](const std::string& field) {
      return std::any_of(p.begin(), p.end(), [&](const std::string& s) { return s.rfind(field, 0) == 0; });
    };
    EXPECT_TRUE(mentions("reuseRate"));
    EXPECT_TRUE(mentions("optInFamilyTreeRate"));
  }
}

TEST(RunScenario, ProducesOneEntryPerReplication) {
  const auto r = run_scenario(small_scenario());
  EXPECT_EQ(r.perReplication.size(), 4u);
  EXPECT_EQ(r.scenarioName, "small");
  EXPECT_EQ(r.rootSeed, 11u);
}

TEST(RunScenario, Deterministic) {
  const auto a = run_scenario(small_scenario());
  const auto b = run_scenario(small_scenario());
  EXPECT_EQ(a.perReplication, b.perReplication);
  EXPECT_EQ(a.aggregate, b.aggregate);
}

TEST(RunScenario, ParallelMatchesSequential) {
  const auto seq = run_scenario(small_scenario(), RunOptions{1});
  const auto par = run_scenario(small_scenario(), RunOptions{4});
  EXPECT_EQ(seq.perReplication, par.perReplication);
  EXPECT_EQ(seq.aggregate, par.aggregate);
}

TEST(RunScenario, ReplicationDependsOnlyOnItsIndex) {
  const auto cfg = small_scenario();
  const auto report = run_scenario(cfg);
  const auto res = load_resources(cfg);
  for (std::uint32_t i : {3u, 0u, 2u, 1u}) {
    EXPECT_EQ(run_replication(cfg, res, i).metrics, report.perReplication[i]) << "replication " << i;
  }
}

TEST(RunScenario, ReplicationsDiffer) {
  const auto r = run_scenario(small_scenario());
  EXPECT_NE(r.perReplication[0], r.perReplication[1]);
}

TEST(RunScenario, AggregateRecomputesExactly) {
  const auto r = run_scenario(small_scenario());
  const auto n = static_cast<double>(r.perReplication.size());
  for (const auto& [name, summary] : r.aggregate) {
    std::vector<double> xs;
    for (const auto& m : r.perReplication) {
      for (const auto& [field, value] : metric_fields(m)) {
        if (field == name && value) xs.push_back(*value);
      }
    }
    ASSERT_EQ(xs.size(), summary.samples) << name;
    double sum = 0;
    for (const double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    EXPECT_EQ(summary.mean, mean) << name;
    EXPECT_EQ(summary.stddev, sd) << name;
  }
  EXPECT_EQ(r.aggregate.count("attempts"), 1u);
  EXPECT_EQ(r.aggregate.at("attempts").samples, static_cast<std::size_t>(n));
}

TEST(RunScenario, AbsentAmplificationIsLeftOutOfAggregate) {
  std::vector<ReplicationMetrics> reps(3);
  reps[1].amplificationFactor = 4.0;
  const auto agg = aggregate_metrics(reps);
  EXPECT_EQ(agg.at("amplificationFactor").samples, 1u);
  EXPECT_EQ(agg.at("amplificationFactor").mean, 4.0);
  EXPECT_EQ(agg.at("amplificationFactor").stddev, 0.0);
  EXPECT_EQ(agg.at("successes").samples, 3u);
}

TEST(RunScenario, MetricFieldsAreAlphabetical) {
  const auto fields = metric_fields(ReplicationMetrics{});
  ASSERT_EQ(fields.size(), 9u);
  for (std::size_t i = 1; i < fields.size(); ++i) EXPECT_LT(fields[i - 1].first, fields[i].first);
}

}  // namespace
}  // namespace credsim
