#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "gfpm/benchgen.hpp"
#include "gfpm/error.hpp"
#include "gfpm/oracle.hpp"
#include "support/test_support.hpp"

namespace gfpm {
namespace {

TEST(Generate, ScenarioFrequencies) {
  const SynthConfig cfg{25000, 60, 0.125, 0.01, 7};
  const auto db = generate(cfg);
  ASSERT_EQ(db.size(), 25000u);
  ASSERT_EQ(db.symbols().size(), 62u);
  const double n = 25000;
  const auto counts = item_counts(db);

  const Item one = db.item("1"), zero = db.item("0");
  EXPECT_EQ(counts[one] + counts[zero], 25000u);
  for (const auto& t : db) EXPECT_NE(t.contains(one), t.contains(zero));
  const double sd_y = std::sqrt(n * 0.01 * 0.99);
  EXPECT_LE(std::abs(static_cast<double>(counts[one]) - n * 0.01), 3 * sd_y);

  // Per item 4 sigma keeps the family-wise false alarm rate small across 60
  // items; the pooled frequency gets the plain 3 sigma bound.
  const double sd_x = std::sqrt(n * 0.125 * 0.875);
  double pooled = 0;
  for (std::uint32_t i = 1; i <= 60; ++i) {
    const double c = static_cast<double>(counts[db.item("i" + std::to_string(i))]);
    EXPECT_LE(std::abs(c - n * 0.125), 4 * sd_x) << "item " << i;
    pooled += c;
  }
  EXPECT_LE(std::abs(pooled - 60 * n * 0.125), 3 * std::sqrt(60.0) * sd_x);
}

TEST(Generate, SameSeedSameData) {
  const SynthConfig cfg{500, 12, 0.3, 0.2, 99};
  const auto a = generate(cfg);
  const auto b = generate(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  auto other = cfg;
  other.seed = 100;
  const auto c = generate(other);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i] == c[i]);
  EXPECT_TRUE(differs);
}

TEST(Generate, InvalidConfig) {
  EXPECT_THROW(generate({10, 5, 0.0, 0.1, 1}), Error);
  EXPECT_THROW(generate({10, 5, 0.5, 1.0, 1}), Error);
  EXPECT_THROW(generate({10, 0, 0.5, 0.1, 1}), Error);
}

TEST(Describe, NamesGenerator) {
  EXPECT_EQ(describe({100, 5, 0.125, 0.01, 3}),
            "# generator=mt19937_64 seed=3 transactions=100 items=5 p_x=0.125 p_y=0.01");
}

TEST(RunBenchmark, ExampleDb) {
  const auto db = test::example_db();
  const auto rec = run_benchmark(db, {Fraction::parse("0.125"), Fraction::parse("0.2"), db.item("1")}, "example", 0);
  EXPECT_EQ(rec.mra.rules.size(), 5u);
  EXPECT_EQ(rec.baseline.engine, "fp-growth");
  EXPECT_TRUE(same_rules(rec.baseline.rules, rec.mra.rules));
}

TEST(RunBenchmark, BalancedClassesAgree) {
  const auto db = generate({2000, 15, 0.2, 0.5, 4});
  const auto rec = run_benchmark(db, {Fraction::parse("0.01"), Fraction::parse("0"), db.item("1")});
  EXPECT_FALSE(rec.mra.rules.empty());
}

TEST(RunBenchmark, RareClassBuildsLess) {
  const auto db = generate({5000, 30, 0.125, 0.01, 2});
  const auto rec = run_benchmark(db, {Fraction::parse("2e-4"), Fraction::parse("0"), db.item("1")});
  EXPECT_LT(rec.mra.stats.conditional_trees_built, rec.baseline.stats.conditional_trees_built);
  EXPECT_LT(rec.mra.stats.nodes_allocated, rec.baseline.stats.nodes_allocated);
}

TEST(BaselineClassRules, MatchesBruteForce) {
  for (int s = 0; s < 40; ++s) {
    std::mt19937_64 rng(17000 + s);
    const auto db = test::random_class_db(rng, 8, 1 + rng() % 60, 0.35, 0.3);
    const MraConfig cfg{Fraction::parse("0.05"), Fraction::parse("0.3"), db.symbols().at("c1")};
    EXPECT_TRUE(same_rules(baseline_class_rules(db, cfg).rules, oracle::bf_rules(db, cfg))) << "seed " << s;
  }
}

TEST(BenchRows, Format) {
  BenchRecord rec;
  rec.scenario = "s";
  rec.seed = 5;
  rec.baseline = {"fp-growth", {}, {}};
  rec.baseline.stats.conditional_trees_built = 10;
  rec.baseline.stats.nodes_allocated = 20;
  rec.baseline.stats.header_probes = 30;
  rec.mra = {"mra", {Rule{}}, {}};
  std::ostringstream os;
  write_bench_header(os);
  write_bench_rows(os, rec);
  EXPECT_EQ(os.str(),
            "scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms\n"
            "s,5,fp-growth,0,10,20,30,0.000\n"
            "s,5,mra,1,0,0,0,0.000\n");
  EXPECT_EQ(rec.time_ratio(), 0.0);
}

}  // namespace
}  // namespace gfpm
