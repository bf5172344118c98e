#include "gfpm/tis_tree.hpp"

#include <algorithm>

#include "gfpm/error.hpp"

namespace gfpm {

TisTree::TisTree(std::shared_ptr<const ItemOrder> order) : order_(std::move(order)) {
  if (!order_) throw Error("TisTree requires an item order");
  if (order_->direction() != OrderDirection::kPatternGrowth) {
    throw Error("TisTree requires a pattern-growth item order");
  }
  nodes_.emplace_back();
}

TisTree::NodeId TisTree::child(NodeId parent, Item item) const noexcept {
  const auto r = order_->rank(item);
  const auto& kids = nodes_[parent].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), r,
                             [&](NodeId c, ItemOrder::Rank v) { return order_->rank(nodes_[c].item) < v; });
  return (it != kids.end() && nodes_[*it].item == item) ? *it : kNone;
}

TisTree::NodeId TisTree::add_child(NodeId parent, Item item, Count count, bool target) {
  const auto r = order_->rank(item);
  if (r == ItemOrder::kUnranked) throw Error("item " + std::to_string(item) + " is not ranked in the TIS order");
  if (parent != kRoot && order_->rank(nodes_[parent].item) >= r) {
    throw Error("item " + std::to_string(item) + " does not follow its parent in pattern-growth order");
  }
  auto& kids = nodes_[parent].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), r,
                             [&](NodeId c, ItemOrder::Rank v) { return order_->rank(nodes_[c].item) < v; });
  if (it != kids.end() && nodes_[*it].item == item) {
    auto& n = nodes_[*it];
    n.count = count;
    n.target = n.target || target;
    return *it;
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  kids.insert(it, id);
  Node n;
  n.item = item;
  n.count = count;
  n.target = target;
  n.parent = parent;
  nodes_.push_back(std::move(n));

  // Ancestors' item sets are nested, so the climb stops at the first one
  // that already holds `item`.
  for (NodeId a = parent; a != kNone; a = nodes_[a].parent) {
    auto& s = nodes_[a].subtree_items;
    auto pos = std::lower_bound(s.begin(), s.end(), item);
    if (pos != s.end() && *pos == item) break;
    s.insert(pos, item);
  }
  return id;
}

TisTree::NodeId TisTree::insert(std::span<const Item> itemset, Count count, bool target) {
  Itemset items(itemset.begin(), itemset.end());
  normalize(items);
  for (Item a : items)
    if (!order_->contains(a)) throw Error("item " + std::to_string(a) + " is not ranked in the TIS order");
  if (items.empty()) return kRoot;
  std::sort(items.begin(), items.end(), [&](Item x, Item y) { return order_->rank(x) < order_->rank(y); });

  NodeId cur = kRoot;
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    const NodeId next = child(cur, items[i]);
    cur = next != kNone ? next : add_child(cur, items[i], 0, false);
  }
  return add_child(cur, items.back(), count, target);
}

TisTree::NodeId TisTree::find(std::span<const Item> itemset) const {
  Itemset items(itemset.begin(), itemset.end());
  normalize(items);
  for (Item a : items)
    if (!order_->contains(a)) return kNone;
  std::sort(items.begin(), items.end(), [&](Item x, Item y) { return order_->rank(x) < order_->rank(y); });
  NodeId cur = kRoot;
  for (Item a : items) {
    cur = child(cur, a);
    if (cur == kNone) return kNone;
  }
  return cur;
}

Itemset TisTree::path_items(NodeId id) const {
  Itemset out;
  for (NodeId n = id; n != kRoot && n != kNone; n = nodes_[n].parent) out.push_back(nodes_[n].item);
  std::reverse(out.begin(), out.end());
  return out;
}

void TisTree::reset_g_counts() {
  for (auto& n : nodes_) n.g_count = 0;
}

void TisTree::mark_all_targets() {
  for (std::size_t i = 1; i < nodes_.size(); ++i) nodes_[i].target = true;
}

std::vector<TisEntry> enumerate(const TisTree& tis) {
  std::vector<TisEntry> out;
  out.reserve(tis.size());
  Itemset path;
  auto walk = [&](auto&& self, TisTree::NodeId id) -> void {
    for (auto c : tis.node(id).children) {
      const auto& n = tis.node(c);
      path.push_back(n.item);
      out.push_back({path, n.count, n.g_count, n.target});
      self(self, c);
      path.pop_back();
    }
  };
  walk(walk, TisTree::kRoot);
  return out;
}

TargetTree build_tis_from_target_list(std::span<const Itemset> itemsets, std::shared_ptr<const ItemOrder> order,
                                      std::span<const Item> known_items) {
  TargetTree result{TisTree(std::move(order)), {}};
  Itemset known(known_items.begin(), known_items.end());
  normalize(known);
  for (const auto& set : itemsets) {
    const bool all_known = std::all_of(set.begin(), set.end(), [&](Item a) {
      return std::binary_search(known.begin(), known.end(), a) && result.tree.order().contains(a);
    });
    if (all_known) {
      result.tree.insert(set, 0, true);
    } else {
      result.dropped.push_back(set);
    }
  }
  return result;
}

}  // namespace gfpm
