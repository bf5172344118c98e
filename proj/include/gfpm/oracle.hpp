#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "gfpm/minority_report.hpp"
#include "gfpm/transactions.hpp"

// Brute-force reference counting and mining. Nothing here touches the tree
// code; results are used to certify the tree-based engines.
namespace gfpm::oracle {

// Refuses item universes larger than this.
inline constexpr std::size_t kMaxUniverse = 20;

// Number of transactions containing every item of `itemset` (any order).
Count bf_count(const TransactionDb& db, std::span<const Item> itemset);

struct CountedItemset {
  Itemset itemset;  // ascending ids
  Count count = 0;

  friend bool operator==(const CountedItemset&, const CountedItemset&) = default;
  friend auto operator<=>(const CountedItemset&, const CountedItemset&) = default;
};

// Every itemset of size <= max_len with count >= min_count, in
// lexicographic order of ascending-id itemsets.
std::vector<CountedItemset> bf_frequent(const TransactionDb& db, Count min_count,
                                        std::size_t max_len = std::numeric_limits<std::size_t>::max());

// Rules alpha -> cfg.target_class with class count >= ceil(xi*|db|) (at
// least 1) and confidence >= minconf. Antecedents are ascending ids.
std::vector<Rule> bf_rules(const TransactionDb& db, const MraConfig& cfg);

}  // namespace gfpm::oracle
