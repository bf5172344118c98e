#include "gfpm/fp_growth.hpp"

#include <memory>

#include "gfpm/error.hpp"

namespace gfpm {
namespace {

// Sinks receive enter(item, count) / leave() in preorder.
template <class Sink>
void grow(const FpTree& tree, Count min_count, Sink& sink, MiningStats* stats) {
  const auto& ord = tree.order();
  const auto items = tree.header_items();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    const Item a = *it;
    if (stats) ++stats->header_probes;
    const Count total = tree.total(a);
    if (total < min_count) continue;
    sink.enter(a, total);
    if (ord.rank(a) > 0) {
      FpTree cond = conditional_tree(tree, a, std::nullopt, stats, min_count);
      if (!cond.empty()) grow(cond, min_count, sink, stats);
    }
    sink.leave();
  }
}

struct CallbackSink {
  const ItemsetSink& emit;
  Itemset prefix;

  void enter(Item a, Count c) {
    prefix.push_back(a);
    emit(prefix, c);
  }
  void leave() { prefix.pop_back(); }
};

struct TisSink {
  TisTree& tis;
  std::vector<TisTree::NodeId> stack{TisTree::kRoot};

  void enter(Item a, Count c) { stack.push_back(tis.add_child(stack.back(), a, c, true)); }
  void leave() { stack.pop_back(); }
};

void check_min_count(Count min_count) {
  if (min_count < 1) throw Error("min_count must be at least 1");
}

}  // namespace

void fp_growth(const FpTree& tree, Count min_count, const ItemsetSink& sink, MiningStats* stats) {
  check_min_count(min_count);
  CallbackSink s{sink, {}};
  grow(tree, min_count, s, stats);
}

TisTree fp_growth(const FpTree& tree, Count min_count, MiningStats* stats) {
  check_min_count(min_count);
  TisTree tis(std::make_shared<const ItemOrder>(tree.order().reversed()));
  TisSink s{tis};
  grow(tree, min_count, s, stats);
  return tis;
}

}  // namespace gfpm
