#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfpm/stats.hpp"
#include "gfpm/transactions.hpp"

namespace gfpm {

// Compressed prefix tree over a transaction database. Nodes live in an arena
// and are addressed by index; index 0 is the itemless root.
//
// Along every root-to-leaf path the item ranks (per order()) strictly
// increase. The header table is indexed by rank and links every node of an
// item through next_same_item.
class FpTree {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  static constexpr NodeId kRoot = 0;
  static constexpr Item kNoItem = std::numeric_limits<Item>::max();

  struct Node {
    Item item = kNoItem;
    Count count = 0;
    NodeId parent = kNone;
    NodeId first_child = kNone;
    NodeId next_sibling = kNone;
    NodeId next_same_item = kNone;
  };

  struct HeaderEntry {
    Count total = 0;
    NodeId head = kNone;
  };

  // `rank_limit` bounds the ranks this tree may hold (defaults to the whole order).
  FpTree(std::shared_ptr<const ItemOrder> order, Count db_size,
         std::optional<ItemOrder::Rank> rank_limit = std::nullopt);

  const ItemOrder& order() const noexcept { return *order_; }
  const std::shared_ptr<const ItemOrder>& shared_order() const noexcept { return order_; }
  Count db_size() const noexcept { return db_size_; }

  // O(1): true iff `item` has a header entry with a positive total.
  bool contains(Item item) const noexcept {
    const auto r = order_->rank(item);
    return r < header_.size() && header_[r].total > 0;
  }
  // Count of `item` in the represented database. Throws if !contains(item).
  Count total(Item item) const;
  // Sum of node counts along the item's chain; equals total() by invariant.
  Count chain_sum(Item item) const;

  bool empty() const noexcept { return item_count_ == 0; }
  // Items with a header entry, by ascending rank.
  std::vector<Item> header_items() const;
  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  NodeId chain_head(Item item) const;

  // Inserts a path whose items are already in ascending rank order.
  // Returns the number of nodes created.
  std::size_t insert_ranked(std::span<const Item> ranked_items, Count weight);

  // Indented `item:count` lines, children in ascending rank.
  std::string dump(const SymbolTable& symbols) const;

 private:
  std::shared_ptr<const ItemOrder> order_;
  std::vector<Node> nodes_;
  std::vector<HeaderEntry> header_;
  std::size_t item_count_ = 0;
  Count db_size_ = 0;
};

// Inserts every transaction (restricted to ranked items) in rank order.
FpTree build_fp_tree(const TransactionDb& db, std::shared_ptr<const ItemOrder> order,
                     MiningStats* stats = nullptr);
FpTree build_fp_tree(const TransactionDb& db, const ItemOrder& order, MiningStats* stats = nullptr);

// Conditional FP-tree of `item`: the prefix paths above item's nodes,
// weighted by those nodes' counts. When `allowed` (sorted ids) is given,
// items outside it are skipped. Items whose conditional total is below
// `min_count` (and always those at zero) get no header entry.
// The result shares the parent's order. Throws if !tree.contains(item).
FpTree conditional_tree(const FpTree& tree, Item item,
                        std::optional<std::span<const Item>> allowed = std::nullopt,
                        MiningStats* stats = nullptr, Count min_count = 1);

}  // namespace gfpm
