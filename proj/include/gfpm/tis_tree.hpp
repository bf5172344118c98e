#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "gfpm/transactions.hpp"

namespace gfpm {

// Target-itemset tree. Each node stands for the itemset spelled by its path
// from the root; paths run in pattern-growth order, which is the reverse of
// the FP-tree building order. Besides the target flag and the two counters,
// every node keeps the set of items occurring anywhere below it.
class TisTree {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kRoot = 0;
  static constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

  struct Node {
    Item item = std::numeric_limits<Item>::max();
    bool target = false;
    Count count = 0;
    Count g_count = 0;
    NodeId parent = kNone;
    std::vector<NodeId> children;  // ascending pattern-growth rank
    Itemset subtree_items;         // sorted ids; excludes this node's own item
  };

  // `order` must have pattern-growth direction.
  explicit TisTree(std::shared_ptr<const ItemOrder> order);
  explicit TisTree(const ItemOrder& order) : TisTree(std::make_shared<const ItemOrder>(order)) {}

  const ItemOrder& order() const noexcept { return *order_; }
  const std::shared_ptr<const ItemOrder>& shared_order() const noexcept { return order_; }

  const Node& node(NodeId id) const { return nodes_[id]; }
  // Number of nodes, root excluded.
  std::size_t size() const noexcept { return nodes_.size() - 1; }
  bool empty() const noexcept { return nodes_.size() == 1; }
  bool is_leaf(NodeId id) const { return nodes_[id].children.empty(); }

  // Inserts `itemset` (any order) as a path. Intermediate nodes are created
  // as non-targets; the terminal node gets `count`, and its target flag is
  // OR-ed with `target`. Throws if an item is not ranked.
  NodeId insert(std::span<const Item> itemset, Count count, bool target);
  NodeId insert(std::initializer_list<Item> itemset, Count count, bool target) {
    return insert(std::span<const Item>(itemset.begin(), itemset.size()), count, target);
  }

  // Appends `item` below `parent`, or updates the existing child like insert().
  // `item` must rank after parent's item.
  NodeId add_child(NodeId parent, Item item, Count count, bool target);

  NodeId child(NodeId parent, Item item) const noexcept;
  // Node for `itemset` (any order), or kNone.
  NodeId find(std::span<const Item> itemset) const;

  // Items on the path from the root, in pattern-growth order.
  Itemset path_items(NodeId id) const;

  void set_g_count(NodeId id, Count value) { nodes_[id].g_count = value; }
  void reset_g_counts();
  void mark_all_targets();

 private:
  std::shared_ptr<const ItemOrder> order_;
  std::vector<Node> nodes_;
};

struct TisEntry {
  Itemset itemset;  // pattern-growth order
  Count count = 0;
  Count g_count = 0;
  bool target = false;

  friend bool operator==(const TisEntry&, const TisEntry&) = default;
};

// Depth-first, children in ascending pattern-growth rank; root excluded.
std::vector<TisEntry> enumerate(const TisTree& tis);

struct TargetTree {
  TisTree tree;
  std::vector<Itemset> dropped;  // contained an item outside known_items
};

// Builds a target tree. Itemsets mentioning any item outside `known_items`
// are diverted to `dropped` instead of being inserted.
TargetTree build_tis_from_target_list(std::span<const Itemset> itemsets,
                                      std::shared_ptr<const ItemOrder> order,
                                      std::span<const Item> known_items);

}  // namespace gfpm
