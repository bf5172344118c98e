#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gfpm {

// Interned item identifier. Ids are dense in [0, symbols.size()).
using Item = std::uint32_t;
using Count = std::uint64_t;

// A set of items. Unless a function says otherwise, itemsets are sorted by
// ascending id with no duplicates.
using Itemset = std::vector<Item>;

// Sorts and deduplicates in place.
void normalize(Itemset& items);

// Bijection between external tokens and item ids, interned in first-seen order.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(std::initializer_list<std::string_view> tokens);

  Item intern(std::string_view token);
  std::optional<Item> find(std::string_view token) const;
  // Throws gfpm::Error for unknown tokens.
  Item at(std::string_view token) const;
  const std::string& token(Item id) const;
  std::size_t size() const noexcept { return tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Item> ids_;
};

class Transaction {
 public:
  Transaction() = default;
  explicit Transaction(std::vector<Item> items);
  Transaction(std::initializer_list<Item> items) : Transaction(std::vector<Item>(items)) {}

  std::span<const Item> items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  bool contains(Item item) const noexcept;
  // True iff every item of `itemset` (sorted ascending) is in this transaction.
  bool contains_all(std::span<const Item> itemset) const noexcept;

  friend bool operator==(const Transaction&, const Transaction&) = default;

 private:
  std::vector<Item> items_;
};

// Immutable transaction database. The symbol table is shared between a
// database and the databases derived from it (splits, filters).
class TransactionDb {
 public:
  TransactionDb();
  TransactionDb(SymbolTable symbols, std::vector<Transaction> transactions);
  TransactionDb(std::shared_ptr<const SymbolTable> symbols, std::vector<Transaction> transactions);

  const SymbolTable& symbols() const noexcept { return *symbols_; }
  const std::shared_ptr<const SymbolTable>& shared_symbols() const noexcept { return symbols_; }
  std::span<const Transaction> transactions() const noexcept { return transactions_; }
  const Transaction& operator[](std::size_t i) const { return transactions_[i]; }
  auto begin() const noexcept { return transactions_.begin(); }
  auto end() const noexcept { return transactions_.end(); }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  // Resolves a token through the symbol table; throws on unknown tokens.
  Item item(std::string_view token) const { return symbols_->at(token); }
  Itemset itemset(std::initializer_list<std::string_view> tokens) const;

 private:
  std::shared_ptr<const SymbolTable> symbols_;
  std::vector<Transaction> transactions_;
};

struct BasketFormat {
  std::string separators = " \t,";
  char comment = '#';
};

// Parses one transaction per line. Blank and comment lines are skipped.
// `symbols` may be pre-seeded to pin the ids of known tokens.
TransactionDb load_transactions(std::istream& source, SymbolTable symbols = {},
                                const BasketFormat& format = {});
TransactionDb load_transactions_file(const std::filesystem::path& path, SymbolTable symbols = {},
                                     const BasketFormat& format = {});

// Splits one line into tokens; throws ParseError on invalid UTF-8.
std::vector<std::string_view> tokenize_line(std::string_view line, std::size_t line_number,
                                            const BasketFormat& format = {});

// Per-item transaction counts, indexed by item id (sized to the symbol table).
std::vector<Count> item_counts(const TransactionDb& db);

struct ClassSplit {
  TransactionDb with_class;     // class item removed from each transaction
  TransactionDb without_class;  // unchanged
};

ClassSplit split_by_class(const TransactionDb& db, Item class_item);

// Intersects every transaction with `keep`. Empty results stay in place;
// db.size() is unchanged.
TransactionDb filter_items(const TransactionDb& db, std::span<const Item> keep);

enum class OrderDirection { kTreeBuilding, kPatternGrowth };

// A ranking of a subset of the items. Rank 0 comes first in `direction`.
class ItemOrder {
 public:
  using Rank = std::uint32_t;
  static constexpr Rank kUnranked = std::numeric_limits<Rank>::max();

  ItemOrder() = default;
  ItemOrder(std::vector<Item> items_by_rank, OrderDirection direction);

  Rank rank(Item item) const noexcept {
    return item < rank_of_.size() ? rank_of_[item] : kUnranked;
  }
  bool contains(Item item) const noexcept { return rank(item) != kUnranked; }
  Item at(Rank rank) const { return items_[rank]; }
  std::span<const Item> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  OrderDirection direction() const noexcept { return direction_; }

  ItemOrder reversed() const;
  // Same items ranked in exactly opposite order, with opposite direction.
  bool is_reverse_of(const ItemOrder& other) const noexcept;

 private:
  std::vector<Item> items_;
  std::vector<Rank> rank_of_;
  OrderDirection direction_ = OrderDirection::kTreeBuilding;
};

// Tree-building order over `eligible`: descending count in `db`, ties broken
// by ascending item id.
ItemOrder support_descending_order(const TransactionDb& db, std::span<const Item> eligible);
// Same, from precomputed per-item counts (indexed by id).
ItemOrder support_descending_order(std::span<const Count> counts, std::span<const Item> eligible);

// Joins the tokens of `items` in the given sequence.
std::string format_itemset(const SymbolTable& symbols, std::span<const Item> items, char separator = ';');

}  // namespace gfpm
