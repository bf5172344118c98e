#pragma once

#include "gfpm/fp_tree.hpp"
#include "gfpm/stats.hpp"
#include "gfpm/tis_tree.hpp"

namespace gfpm {

// Guided FP-growth. Walks the TIS subtree below `start` together with `tree`
// and sets g_count of every target node to that itemset's count in the
// database `tree` represents (relative to the context `start` stands for).
//
// Children missing from the FP-tree header are skipped. Non-target children
// are not counted; leaf children get no conditional tree. Conditional trees
// are restricted to the child's subtree items and no min-support applies.
// g_count fields below `start` are expected to be zero on entry.
//
// Throws gfpm::Error, before touching the tree, when the TIS order is not
// the exact reverse of the FP-tree order.
void gfp_growth(TisTree& tis, TisTree::NodeId start, const FpTree& tree, MiningStats* stats = nullptr);

inline void gfp_growth(TisTree& tis, const FpTree& tree, MiningStats* stats = nullptr) {
  gfp_growth(tis, TisTree::kRoot, tree, stats);
}

}  // namespace gfpm
