#include "gfpm/gfp_growth.hpp"

#include "gfpm/error.hpp"

namespace gfpm {
namespace {

void guided(TisTree& tis, TisTree::NodeId parent, const FpTree& tree, MiningStats* stats) {
  // The walk never inserts nodes, so this reference stays valid.
  const auto& children = tis.node(parent).children;
  for (const auto c : children) {
    const auto& n = tis.node(c);
    if (stats) ++stats->header_probes;
    if (!tree.contains(n.item)) continue;
    if (n.target) tis.set_g_count(c, tree.total(n.item));
    if (n.children.empty()) continue;
    FpTree cond = conditional_tree(tree, n.item, std::span<const Item>(n.subtree_items), stats);
    if (!cond.empty()) guided(tis, c, cond, stats);
  }
}

}  // namespace

void gfp_growth(TisTree& tis, TisTree::NodeId start, const FpTree& tree, MiningStats* stats) {
  if (!tis.order().is_reverse_of(tree.order())) {
    throw Error("TIS-tree order is not the reverse of the FP-tree order");
  }
  guided(tis, start, tree, stats);
}

}  // namespace gfpm
