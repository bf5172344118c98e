#include "gfpm/benchgen.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "gfpm/error.hpp"
#include "gfpm/fp_growth.hpp"
#include "gfpm/fp_tree.hpp"

namespace gfpm {

void SynthConfig::validate() const {
  if (!(p_x > 0.0 && p_x < 1.0)) throw Error("p_x must lie in (0, 1)");
  if (!(p_y > 0.0 && p_y < 1.0)) throw Error("p_y must lie in (0, 1)");
  if (n_items < 1) throw Error("n_items must be at least 1");
}

TransactionDb generate(const SynthConfig& cfg) {
  cfg.validate();
  SymbolTable symbols;
  for (std::uint32_t i = 1; i <= cfg.n_items; ++i) symbols.intern("i" + std::to_string(i));
  const Item class0 = symbols.intern("0");
  const Item class1 = symbols.intern("1");

  std::mt19937_64 rng(cfg.seed);
  // 53 high bits -> [0, 1)
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Transaction> transactions;
  transactions.reserve(cfg.n_transactions);
  std::vector<Item> items;
  for (std::uint64_t t = 0; t < cfg.n_transactions; ++t) {
    items.clear();
    for (Item a = 0; a < cfg.n_items; ++a)
      if (uniform() < cfg.p_x) items.push_back(a);
    items.push_back(uniform() < cfg.p_y ? class1 : class0);
    transactions.emplace_back(items);
  }
  return TransactionDb(std::move(symbols), std::move(transactions));
}

std::string describe(const SynthConfig& cfg) {
  std::ostringstream os;
  os << "# generator=" << kGeneratorName << " seed=" << cfg.seed << " transactions=" << cfg.n_transactions
     << " items=" << cfg.n_items << " p_x=" << format_g6(cfg.p_x) << " p_y=" << format_g6(cfg.p_y);
  return os.str();
}

namespace {

// Prefix trie of every frequent itemset the baseline finds, in emission order.
class ItemsetTrie {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    Item item;
    Count count;
    std::uint32_t first_child = kNone;
    std::uint32_t next_sibling = kNone;
  };

  ItemsetTrie() : nodes_{{FpTree::kNoItem, 0}} {}

  // Pattern-growth emission is a preorder walk, so the prefix length names
  // the parent on the stack.
  void add(std::span<const Item> prefix, Count count) {
    stack_.resize(prefix.size());
    const std::uint32_t parent = stack_.back();
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({prefix.back(), count, kNone, nodes_[parent].first_child});
    nodes_[parent].first_child = id;
    stack_.push_back(id);
  }

  const Node& node(std::uint32_t id) const { return nodes_[id]; }

  // `path` in emission (pattern-growth) order.
  std::uint32_t find(std::span<const Item> path) const {
    std::uint32_t cur = 0;
    for (Item a : path) {
      std::uint32_t c = nodes_[cur].first_child;
      while (c != kNone && nodes_[c].item != a) c = nodes_[c].next_sibling;
      if (c == kNone) return kNone;
      cur = c;
    }
    return cur;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> stack_{0};
};

}  // namespace

EngineRun baseline_class_rules(const TransactionDb& db, const MraConfig& cfg) {
  EngineRun run{"fp-growth", {}, {}};
  ScopedTimer timer(run.stats);
  if (cfg.target_class >= db.symbols().size()) throw Error("target class is not in the symbol table");
  const Count min_count = min_count_for_support(cfg.xi, db.size());

  const auto counts = item_counts(db);
  Itemset eligible;
  for (Item a = 0; a < counts.size(); ++a)
    if (counts[a] >= min_count) eligible.push_back(a);
  auto order = std::make_shared<const ItemOrder>(support_descending_order(std::span<const Count>(counts), eligible));
  const FpTree tree = build_fp_tree(db, order, &run.stats);

  ItemsetTrie trie;
  fp_growth(tree, min_count, [&](std::span<const Item> itemset, Count c) { trie.add(itemset, c); }, &run.stats);

  // Every frequent itemset holding the class yields a candidate rule; its
  // antecedent is frequent too, so its count is in the trie.
  const Item cls = cfg.target_class;
  Itemset path;
  auto walk = [&](auto&& self, std::uint32_t id, bool has_class) -> void {
    for (auto c = trie.node(id).first_child; c != ItemsetTrie::kNone; c = trie.node(c).next_sibling) {
      const auto& n = trie.node(c);
      const bool with_class = has_class || n.item == cls;
      path.push_back(n.item);
      if (with_class && path.size() > 1) {
        Itemset antecedent;
        for (Item a : path)
          if (a != cls) antecedent.push_back(a);
        const auto at = trie.find(antecedent);
        if (at == ItemsetTrie::kNone) throw Error("baseline lost the count of a frequent antecedent");
        const Count c1 = n.count;
        const Count c0 = trie.node(at).count - c1;
        if (cfg.minconf.at_most(c1, c1 + c0)) run.rules.push_back({std::move(antecedent), cls, c1, c0, db.size()});
      }
      self(self, c, with_class);
      path.pop_back();
    }
  };
  walk(walk, 0, false);
  return run;
}

double BenchRecord::time_ratio() const {
  const double m = mra.stats.wall_ms();
  return m > 0 ? baseline.stats.wall_ms() / m : 0.0;
}

std::vector<Rule> canonical(std::vector<Rule> rules) {
  for (auto& r : rules) normalize(r.antecedent);
  std::sort(rules.begin(), rules.end(), [](const Rule& x, const Rule& y) { return x.antecedent < y.antecedent; });
  return rules;
}

bool same_rules(const std::vector<Rule>& a, const std::vector<Rule>& b) {
  if (a.size() != b.size()) return false;
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const auto& x = ca[i];
    const auto& y = cb[i];
    if (x.antecedent != y.antecedent || x.consequent != y.consequent || x.count1 != y.count1 ||
        x.count0 != y.count0 || x.db_size != y.db_size) {
      return false;
    }
  }
  return true;
}

BenchRecord run_benchmark(const TransactionDb& db, const MraConfig& cfg, std::string scenario, std::uint64_t seed) {
  BenchRecord rec;
  rec.scenario = std::move(scenario);
  rec.seed = seed;
  rec.baseline = baseline_class_rules(db, cfg);
  rec.mra.engine = "mra";
  rec.mra.rules = minority_report(db, cfg, &rec.mra.stats).rules;
  if (!same_rules(rec.baseline.rules, rec.mra.rules)) {
    throw Error("rule sets differ between fp-growth (" + std::to_string(rec.baseline.rules.size()) + " rules) and mra (" +
                std::to_string(rec.mra.rules.size()) + " rules) on scenario " + rec.scenario + " seed " +
                std::to_string(seed));
  }
  return rec;
}

void write_bench_header(std::ostream& out) {
  out << "scenario,seed,engine,rules,cond_trees,nodes,header_probes,wall_ms\n";
}

void write_bench_rows(std::ostream& out, const BenchRecord& record) {
  for (const EngineRun* run : {&record.baseline, &record.mra}) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", run->stats.wall_ms());
    out << record.scenario << ',' << record.seed << ',' << run->engine << ',' << run->rules.size() << ','
        << run->stats.conditional_trees_built << ',' << run->stats.nodes_allocated << ','
        << run->stats.header_probes << ',' << ms << '\n';
  }
}

}  // namespace gfpm
