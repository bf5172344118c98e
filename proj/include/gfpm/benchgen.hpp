#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gfpm/minority_report.hpp"
#include "gfpm/stats.hpp"
#include "gfpm/transactions.hpp"

namespace gfpm {

// Recorded in generated files and benchmark output.
inline constexpr const char* kGeneratorName = "mt19937_64";

struct SynthConfig {
  std::uint64_t n_transactions = 25000;
  std::uint32_t n_items = 60;
  double p_x = 0.125;  // per-item inclusion probability
  double p_y = 0.01;   // target class probability
  std::uint64_t seed = 1;

  // Throws gfpm::Error unless 0 < p_x < 1, 0 < p_y < 1 and n_items >= 1.
  void validate() const;
};

// Items are named "i1".."iN"; every transaction also carries exactly one
// class item, "1" with probability p_y and "0" otherwise. Deterministic for
// a fixed seed.
TransactionDb generate(const SynthConfig& cfg);

// Header comment describing how a synthetic file was produced.
std::string describe(const SynthConfig& cfg);

struct EngineRun {
  std::string engine;
  std::vector<Rule> rules;
  MiningStats stats;
};

struct BenchRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  EngineRun baseline;  // full FP-growth over the whole database
  EngineRun mra;
  double time_ratio() const;
};

// Plain FP-growth over the whole database at min-count ceil(xi*|db|),
// keeping the itemsets that contain the target class and turning them into
// rules. Used as the reference for run_benchmark.
EngineRun baseline_class_rules(const TransactionDb& db, const MraConfig& cfg);

// Runs the baseline and minority_report on `db` and checks that both produce
// the same rule set. Throws gfpm::Error on a mismatch.
BenchRecord run_benchmark(const TransactionDb& db, const MraConfig& cfg, std::string scenario = "custom",
                          std::uint64_t seed = 0);

// `scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms`
void write_bench_header(std::ostream& out);
void write_bench_rows(std::ostream& out, const BenchRecord& record);

// Orders rules by antecedent (ascending ids), for set comparisons.
std::vector<Rule> canonical(std::vector<Rule> rules);
bool same_rules(const std::vector<Rule>& a, const std::vector<Rule>& b);

}  // namespace gfpm
