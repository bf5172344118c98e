#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfpm/stats.hpp"
#include "gfpm/tis_tree.hpp"
#include "gfpm/transactions.hpp"

namespace gfpm {

// Non-negative exact fraction for thresholds.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // Accepts decimal notation with optional exponent: "0.2", "1", "5e-5".
  static Fraction parse(std::string_view text);
  // Nearest multiple of 1e-12.
  static Fraction from_double(double value);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // this <= a / b, for b > 0.
  bool at_most(std::uint64_t a, std::uint64_t b) const;
  // ceil(this * n)
  std::uint64_t ceil_times(std::uint64_t n) const;
};

struct MraConfig {
  Fraction xi;       // minimum rule support, 0 < xi < 1
  Fraction minconf;  // 0 <= minconf <= 1
  Item target_class = 0;

  static MraConfig make(double xi, double minconf, Item target_class) {
    return {Fraction::from_double(xi), Fraction::from_double(minconf), target_class};
  }
};

// antecedent -> consequent. support = count1 / db_size,
// confidence = count1 / (count1 + count0).
struct Rule {
  Itemset antecedent;  // pattern-growth order
  Item consequent = 0;
  Count count1 = 0;  // transactions holding antecedent and consequent
  Count count0 = 0;  // transactions holding antecedent but not consequent
  Count db_size = 0;

  double support() const { return static_cast<double>(count1) / static_cast<double>(db_size); }
  double confidence() const { return static_cast<double>(count1) / static_cast<double>(count1 + count0); }
};

// Minimum class count a rule needs: ceil(xi * db_size), at least 1.
Count min_count_for_support(const Fraction& xi, Count db_size);

// Items whose count in the class-side database reaches min_count.
Itemset select_rare_frequent_items(const TransactionDb& class_db, Count min_count);

// Turns every target node of a counted TIS tree (count = class count,
// g_count = other-class count) into a rule and keeps those with confidence
// >= minconf. Targets with count 0 are skipped with a warning.
std::vector<Rule> prune_to_rules(const TisTree& tis, Count db_size, Item target_class, const Fraction& minconf,
                                 std::vector<std::string>* warnings = nullptr);

struct MraResult {
  std::vector<Rule> rules;
  std::vector<std::string> warnings;
  Count min_count = 0;
  Itemset selected_items;
  // The counted TIS tree, absent when the class never occurs.
  std::optional<TisTree> tis;
};

// Mines every rule alpha -> target_class with class count >= ceil(xi*|db|)
// and confidence >= minconf. The class-side database is mined with
// FP-growth into a TIS tree, whose itemsets are then counted in the other
// side with guided FP-growth. Both FP-trees share one support-descending
// order computed over the whole filtered database.
MraResult minority_report(const TransactionDb& db, const MraConfig& cfg, MiningStats* stats = nullptr);

// `antecedent,consequent,support,confidence,count1,count0`, one row per rule.
void write_rules_csv(std::ostream& out, const std::vector<Rule>& rules, const SymbolTable& symbols);
void write_rules_jsonl(std::ostream& out, const std::vector<Rule>& rules, const SymbolTable& symbols);

// printf "%.6g"
std::string format_g6(double value);

}  // namespace gfpm
