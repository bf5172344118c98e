#pragma once

#include <functional>
#include <span>

#include "gfpm/fp_tree.hpp"
#include "gfpm/stats.hpp"
#include "gfpm/tis_tree.hpp"

namespace gfpm {

// Receives each frequent itemset (pattern-growth order) with its count.
using ItemsetSink = std::function<void(std::span<const Item> itemset, Count count)>;

// Classical FP-growth with min-count pruning. Header items are processed in
// ascending-support order (descending tree rank); every conditional tree is
// pruned to items meeting min_count. Throws if min_count < 1.
void fp_growth(const FpTree& tree, Count min_count, const ItemsetSink& sink, MiningStats* stats = nullptr);

// Same walk, inserting every frequent itemset into a TIS tree whose order is
// the reverse of the FP-tree's. Terminal nodes are targets carrying their
// count; g_count stays zero.
TisTree fp_growth(const FpTree& tree, Count min_count, MiningStats* stats = nullptr);

}  // namespace gfpm
