#include "gfpm/fp_tree.hpp"

#include <algorithm>
#include <functional>

#include "gfpm/error.hpp"

namespace gfpm {

FpTree::FpTree(std::shared_ptr<const ItemOrder> order, Count db_size,
               std::optional<ItemOrder::Rank> rank_limit)
    : order_(std::move(order)), db_size_(db_size) {
  if (!order_) throw Error("FpTree requires an item order");
  if (order_->direction() != OrderDirection::kTreeBuilding) {
    throw Error("FpTree requires a tree-building item order");
  }
  const std::size_t limit = rank_limit ? std::min<std::size_t>(*rank_limit, order_->size()) : order_->size();
  header_.resize(limit);
  nodes_.emplace_back();
}

Count FpTree::total(Item item) const {
  if (!contains(item)) throw Error("item " + std::to_string(item) + " is not in the FP-tree header");
  return header_[order_->rank(item)].total;
}

Count FpTree::chain_sum(Item item) const {
  Count sum = 0;
  for (NodeId n = chain_head(item); n != kNone; n = nodes_[n].next_same_item) sum += nodes_[n].count;
  return sum;
}

std::vector<Item> FpTree::header_items() const {
  std::vector<Item> items;
  items.reserve(item_count_);
  for (ItemOrder::Rank r = 0; r < header_.size(); ++r)
    if (header_[r].total > 0) items.push_back(order_->at(r));
  return items;
}

FpTree::NodeId FpTree::chain_head(Item item) const {
  const auto r = order_->rank(item);
  return r < header_.size() ? header_[r].head : kNone;
}

std::size_t FpTree::insert_ranked(std::span<const Item> ranked_items, Count weight) {
  std::size_t created = 0;
  NodeId cur = kRoot;
  for (Item a : ranked_items) {
    NodeId child = nodes_[cur].first_child;
    while (child != kNone && nodes_[child].item != a) child = nodes_[child].next_sibling;
    auto& entry = header_[order_->rank(a)];
    if (child == kNone) {
      child = static_cast<NodeId>(nodes_.size());
      Node n;
      n.item = a;
      n.parent = cur;
      n.next_sibling = nodes_[cur].first_child;
      n.next_same_item = entry.head;
      nodes_.push_back(n);
      nodes_[cur].first_child = child;
      entry.head = child;
      ++created;
    }
    if (entry.total == 0) ++item_count_;
    entry.total += weight;
    nodes_[child].count += weight;
    cur = child;
  }
  return created;
}

std::string FpTree::dump(const SymbolTable& symbols) const {
  std::string out;
  std::function<void(NodeId, int)> walk = [&](NodeId id, int depth) {
    std::vector<NodeId> kids;
    for (NodeId c = nodes_[id].first_child; c != kNone; c = nodes_[c].next_sibling) kids.push_back(c);
    std::sort(kids.begin(), kids.end(), [&](NodeId x, NodeId y) {
      return order_->rank(nodes_[x].item) < order_->rank(nodes_[y].item);
    });
    for (NodeId c : kids) {
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      out += symbols.token(nodes_[c].item);
      out += ':';
      out += std::to_string(nodes_[c].count);
      out += '\n';
      walk(c, depth + 1);
    }
  };
  walk(kRoot, 0);
  return out;
}

FpTree build_fp_tree(const TransactionDb& db, std::shared_ptr<const ItemOrder> order, MiningStats* stats) {
  FpTree tree(std::move(order), db.size());
  const auto& ord = tree.order();
  std::vector<Item> path;
  std::size_t created = 0;
  for (const auto& t : db) {
    path.clear();
    for (Item a : t)
      if (ord.contains(a)) path.push_back(a);
    std::sort(path.begin(), path.end(), [&](Item x, Item y) { return ord.rank(x) < ord.rank(y); });
    created += tree.insert_ranked(path, 1);
  }
  if (stats) stats->nodes_allocated += created;
  return tree;
}

FpTree build_fp_tree(const TransactionDb& db, const ItemOrder& order, MiningStats* stats) {
  return build_fp_tree(db, std::make_shared<const ItemOrder>(order), stats);
}

FpTree conditional_tree(const FpTree& tree, Item item, std::optional<std::span<const Item>> allowed,
                        MiningStats* stats, Count min_count) {
  using NodeId = FpTree::NodeId;
  if (!tree.contains(item)) throw Error("item " + std::to_string(item) + " is not in the FP-tree header");
  const auto& ord = tree.order();
  const auto limit = ord.rank(item);

  // Conditional paths only hold items ranked before `item`.
  std::vector<char> permitted(limit, allowed ? 0 : 1);
  if (allowed) {
    for (Item a : *allowed) {
      const auto r = ord.rank(a);
      if (r < limit) permitted[r] = 1;
    }
  }

  std::vector<Count> counts(limit, 0);
  for (NodeId n = tree.chain_head(item); n != FpTree::kNone; n = tree.node(n).next_same_item) {
    const Count w = tree.node(n).count;
    for (NodeId p = tree.node(n).parent; p != FpTree::kRoot; p = tree.node(p).parent) {
      const auto r = ord.rank(tree.node(p).item);
      if (permitted[r]) counts[r] += w;
    }
  }
  const Count threshold = std::max<Count>(min_count, 1);
  for (ItemOrder::Rank r = 0; r < limit; ++r)
    if (counts[r] < threshold) permitted[r] = 0;

  FpTree cond(tree.shared_order(), tree.total(item), limit);
  std::vector<Item> path;
  std::size_t created = 0;
  for (NodeId n = tree.chain_head(item); n != FpTree::kNone; n = tree.node(n).next_same_item) {
    path.clear();
    for (NodeId p = tree.node(n).parent; p != FpTree::kRoot; p = tree.node(p).parent) {
      const Item a = tree.node(p).item;
      if (permitted[ord.rank(a)]) path.push_back(a);
    }
    if (path.empty()) continue;
    std::reverse(path.begin(), path.end());
    created += cond.insert_ranked(path, tree.node(n).count);
  }
  if (stats) {
    ++stats->conditional_trees_built;
    stats->nodes_allocated += created;
  }
  return cond;
}

}  // namespace gfpm
