#include "gfpm/transactions.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>

#include "gfpm/error.hpp"

namespace gfpm {

void normalize(Itemset& items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

SymbolTable::SymbolTable(std::initializer_list<std::string_view> tokens) {
  for (auto t : tokens) intern(t);
}

Item SymbolTable::intern(std::string_view token) {
  auto [it, inserted] = ids_.try_emplace(std::string(token), static_cast<Item>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::optional<Item> SymbolTable::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Item SymbolTable::at(std::string_view token) const {
  if (auto id = find(token)) return *id;
  throw Error("unknown item '" + std::string(token) + "'");
}

const std::string& SymbolTable::token(Item id) const {
  if (id >= tokens_.size()) throw Error("item id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

Transaction::Transaction(std::vector<Item> items) : items_(std::move(items)) { normalize(items_); }

bool Transaction::contains(Item item) const noexcept {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Transaction::contains_all(std::span<const Item> itemset) const noexcept {
  return std::includes(items_.begin(), items_.end(), itemset.begin(), itemset.end());
}

TransactionDb::TransactionDb() : symbols_(std::make_shared<const SymbolTable>()) {}

TransactionDb::TransactionDb(SymbolTable symbols, std::vector<Transaction> transactions)
    : TransactionDb(std::make_shared<const SymbolTable>(std::move(symbols)), std::move(transactions)) {}

TransactionDb::TransactionDb(std::shared_ptr<const SymbolTable> symbols,
                             std::vector<Transaction> transactions)
    : symbols_(std::move(symbols)), transactions_(std::move(transactions)) {
  if (!symbols_) symbols_ = std::make_shared<const SymbolTable>();
  const auto n = symbols_->size();
  for (const auto& t : transactions_) {
    if (!t.empty() && t.items().back() >= n) {
      throw Error("transaction references item id " + std::to_string(t.items().back()) +
                  " outside a symbol table of size " + std::to_string(n));
    }
  }
}

Itemset TransactionDb::itemset(std::initializer_list<std::string_view> tokens) const {
  Itemset out;
  for (auto t : tokens) out.push_back(item(t));
  normalize(out);
  return out;
}

namespace {

// Returns false on any ill-formed UTF-8 sequence (overlongs, surrogates included).
bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace

std::vector<std::string_view> tokenize_line(std::string_view line, std::size_t line_number,
                                            const BasketFormat& format) {
  std::vector<std::string_view> tokens;
  auto is_sep = [&](char c) {
    return c == '\r' || c == '\n' || format.separators.find(c) != std::string::npos;
  };
  std::size_t i = 0;
  while (i < line.size() && is_sep(line[i])) ++i;
  if (i < line.size() && line[i] == format.comment) return tokens;
  while (i < line.size()) {
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    auto token = line.substr(i, j - i);
    if (!valid_utf8(token)) throw ParseError(line_number, "token is not valid UTF-8");
    tokens.push_back(token);
    i = j;
    while (i < line.size() && is_sep(line[i])) ++i;
  }
  return tokens;
}

TransactionDb load_transactions(std::istream& source, SymbolTable symbols, const BasketFormat& format) {
  std::vector<Transaction> transactions;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(source, line)) {
    ++line_number;
    auto tokens = tokenize_line(line, line_number, format);
    if (tokens.empty()) continue;
    std::vector<Item> items;
    items.reserve(tokens.size());
    for (auto t : tokens) items.push_back(symbols.intern(t));
    transactions.emplace_back(std::move(items));
  }
  if (source.bad()) throw Error("read failure after line " + std::to_string(line_number));
  return TransactionDb(std::move(symbols), std::move(transactions));
}

TransactionDb load_transactions_file(const std::filesystem::path& path, SymbolTable symbols,
                                     const BasketFormat& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return load_transactions(in, std::move(symbols), format);
}

std::vector<Count> item_counts(const TransactionDb& db) {
  std::vector<Count> counts(db.symbols().size(), 0);
  for (const auto& t : db)
    for (Item a : t) ++counts[a];
  return counts;
}

ClassSplit split_by_class(const TransactionDb& db, Item class_item) {
  if (class_item >= db.symbols().size()) {
    throw Error("class item id " + std::to_string(class_item) + " is not in the symbol table");
  }
  std::vector<Transaction> with, without;
  for (const auto& t : db) {
    if (t.contains(class_item)) {
      std::vector<Item> rest;
      rest.reserve(t.size() - 1);
      for (Item a : t)
        if (a != class_item) rest.push_back(a);
      with.emplace_back(std::move(rest));
    } else {
      without.push_back(t);
    }
  }
  return {TransactionDb(db.shared_symbols(), std::move(with)),
          TransactionDb(db.shared_symbols(), std::move(without))};
}

TransactionDb filter_items(const TransactionDb& db, std::span<const Item> keep) {
  std::vector<char> mask(db.symbols().size(), 0);
  for (Item a : keep)
    if (a < mask.size()) mask[a] = 1;
  std::vector<Transaction> out;
  out.reserve(db.size());
  for (const auto& t : db) {
    std::vector<Item> kept;
    for (Item a : t)
      if (mask[a]) kept.push_back(a);
    out.emplace_back(std::move(kept));
  }
  return TransactionDb(db.shared_symbols(), std::move(out));
}

ItemOrder::ItemOrder(std::vector<Item> items_by_rank, OrderDirection direction)
    : items_(std::move(items_by_rank)), direction_(direction) {
  Item max_item = 0;
  for (Item a : items_) max_item = std::max(max_item, a);
  rank_of_.assign(items_.empty() ? 0 : std::size_t{max_item} + 1, kUnranked);
  for (Rank r = 0; r < items_.size(); ++r) {
    if (rank_of_[items_[r]] != kUnranked) {
      throw Error("item " + std::to_string(items_[r]) + " ranked twice");
    }
    rank_of_[items_[r]] = r;
  }
}

ItemOrder ItemOrder::reversed() const {
  std::vector<Item> rev(items_.rbegin(), items_.rend());
  return ItemOrder(std::move(rev), direction_ == OrderDirection::kTreeBuilding
                                       ? OrderDirection::kPatternGrowth
                                       : OrderDirection::kTreeBuilding);
}

bool ItemOrder::is_reverse_of(const ItemOrder& other) const noexcept {
  return direction_ != other.direction_ && items_.size() == other.items_.size() &&
         std::equal(items_.begin(), items_.end(), other.items_.rbegin());
}

ItemOrder support_descending_order(const TransactionDb& db, std::span<const Item> eligible) {
  const auto counts = item_counts(db);
  return support_descending_order(std::span<const Count>(counts), eligible);
}

ItemOrder support_descending_order(std::span<const Count> counts, std::span<const Item> eligible) {
  Itemset items(eligible.begin(), eligible.end());
  normalize(items);
  auto count_of = [&](Item a) { return a < counts.size() ? counts[a] : Count{0}; };
  std::stable_sort(items.begin(), items.end(),
                   [&](Item x, Item y) { return count_of(x) > count_of(y); });
  return ItemOrder(std::move(items), OrderDirection::kTreeBuilding);
}

std::string format_itemset(const SymbolTable& symbols, std::span<const Item> items, char separator) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += separator;
    out += symbols.token(items[i]);
  }
  return out;
}

}  // namespace gfpm
