#include "gfpm/oracle.hpp"

#include <algorithm>

#include "gfpm/error.hpp"

namespace gfpm::oracle {
namespace {

__extension__ using Wide = unsigned __int128;

bool subset_of(const Itemset& sorted_set, const Transaction& t) {
  return std::all_of(sorted_set.begin(), sorted_set.end(), [&](Item a) { return t.contains(a); });
}

Count scan(const TransactionDb& db, const Itemset& sorted_set) {
  Count c = 0;
  for (const auto& t : db)
    if (subset_of(sorted_set, t)) ++c;
  return c;
}

Itemset universe(const TransactionDb& db) {
  Itemset items;
  for (const auto& t : db)
    for (Item a : t) items.push_back(a);
  normalize(items);
  return items;
}

// Depth-first over ascending ids; an itemset below `min_count` is never extended.
template <class Keep>
void extend(const Itemset& items, std::size_t from, Itemset& current, std::size_t max_len, const Keep& keep) {
  if (current.size() >= max_len) return;
  for (std::size_t i = from; i < items.size(); ++i) {
    current.push_back(items[i]);
    if (keep(current)) extend(items, i + 1, current, max_len, keep);
    current.pop_back();
  }
}

}  // namespace

Count bf_count(const TransactionDb& db, std::span<const Item> itemset) {
  Itemset s(itemset.begin(), itemset.end());
  normalize(s);
  return scan(db, s);
}

std::vector<CountedItemset> bf_frequent(const TransactionDb& db, Count min_count, std::size_t max_len) {
  const auto items = universe(db);
  if (items.size() > kMaxUniverse) {
    throw Error("brute-force enumeration refuses " + std::to_string(items.size()) + " distinct items (limit " +
                std::to_string(kMaxUniverse) + ")");
  }
  std::vector<CountedItemset> out;
  Itemset current;
  extend(items, 0, current, max_len, [&](const Itemset& s) {
    const Count c = scan(db, s);
    if (c < min_count || c == 0) return false;
    out.push_back({s, c});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rule> bf_rules(const TransactionDb& db, const MraConfig& cfg) {
  const Item cls = cfg.target_class;
  const Count n = db.size();
  // ceil(xi * n), at least 1
  const auto product = static_cast<Wide>(cfg.xi.num) * n;
  const Count min_count = std::max<Count>(1, static_cast<Count>((product + cfg.xi.den - 1) / cfg.xi.den));

  Itemset candidates;
  for (const auto& t : db)
    if (t.contains(cls))
      for (Item a : t)
        if (a != cls) candidates.push_back(a);
  normalize(candidates);
  if (candidates.size() > kMaxUniverse) {
    throw Error("brute-force rule mining refuses " + std::to_string(candidates.size()) + " candidate items");
  }

  std::vector<Rule> rules;
  Itemset current;
  extend(candidates, 0, current, std::numeric_limits<std::size_t>::max(), [&](const Itemset& s) {
    Itemset with_class = s;
    with_class.push_back(cls);
    normalize(with_class);
    const Count c1 = scan(db, with_class);
    if (c1 < min_count || c1 == 0) return false;
    const Count c0 = scan(db, s) - c1;
    // c1 / (c1 + c0) >= minconf
    if (static_cast<Wide>(cfg.minconf.num) * (c1 + c0) <=
        static_cast<Wide>(c1) * cfg.minconf.den) {
      rules.push_back({s, cls, c1, c0, n});
    }
    return true;
  });
  return rules;
}

}  // namespace gfpm::oracle
