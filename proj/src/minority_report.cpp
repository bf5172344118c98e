#include "gfpm/minority_report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "gfpm/error.hpp"
#include "gfpm/fp_growth.hpp"
#include "gfpm/fp_tree.hpp"
#include "gfpm/gfp_growth.hpp"

namespace gfpm {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kMaxDen = 1'000'000'000'000'000'000ULL;

Fraction reduced(std::uint64_t num, std::uint64_t den) {
  const auto g = std::gcd(num, den);
  return g > 1 ? Fraction{num / g, den / g} : Fraction{num, den};
}

}  // namespace

Fraction Fraction::parse(std::string_view text) {
  auto fail = [&]() -> Fraction { throw Error("not a non-negative decimal: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  std::uint64_t num = 0;
  int scale = 0;  // value = num * 10^scale
  bool any_digit = false;
  bool seen_point = false;
  auto push_digit = [&](char c) {
    if (num > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail();
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
  };
  if (i < text.size() && text[i] == '+') ++i;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      push_digit(c);
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i == text.size()) return fail();
    int exp = 0;
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])) || exp > 1000) return fail();
      exp = exp * 10 + (text[i] - '0');
    }
    scale += neg ? -exp : exp;
  }
  if (i != text.size()) return fail();

  std::uint64_t den = 1;
  for (; scale > 0; --scale) {
    if (num > std::numeric_limits<std::uint64_t>::max() / 10) return fail();
    num *= 10;
  }
  for (; scale < 0; ++scale) {
    if (den >= kMaxDen) return fail();
    den *= 10;
  }
  return reduced(num, den);
}

Fraction Fraction::from_double(double value) {
  if (!(value >= 0.0) || !std::isfinite(value) || value > 1e6) {
    throw Error("threshold out of range: " + std::to_string(value));
  }
  constexpr std::uint64_t kDen = 1'000'000'000'000ULL;
  return reduced(static_cast<std::uint64_t>(std::llround(value * static_cast<double>(kDen))), kDen);
}

bool Fraction::at_most(std::uint64_t a, std::uint64_t b) const {
  return static_cast<u128>(num) * b <= static_cast<u128>(a) * den;
}

std::uint64_t Fraction::ceil_times(std::uint64_t n) const {
  const u128 p = static_cast<u128>(num) * n;
  return static_cast<std::uint64_t>((p + den - 1) / den);
}

Count min_count_for_support(const Fraction& xi, Count db_size) {
  return std::max<Count>(1, xi.ceil_times(db_size));
}

Itemset select_rare_frequent_items(const TransactionDb& class_db, Count min_count) {
  if (min_count < 1) throw Error("min_count must be at least 1");
  const auto counts = item_counts(class_db);
  Itemset out;
  for (Item a = 0; a < counts.size(); ++a)
    if (counts[a] >= min_count) out.push_back(a);
  return out;
}

std::vector<Rule> prune_to_rules(const TisTree& tis, Count db_size, Item target_class, const Fraction& minconf,
                                 std::vector<std::string>* warnings) {
  if (db_size < 1) throw Error("db_size must be at least 1");
  std::vector<Rule> rules;
  for (auto& e : enumerate(tis)) {
    if (!e.target) continue;
    if (e.count == 0) {
      if (warnings) warnings->push_back("target itemset with zero class count skipped");
      continue;
    }
    // conf = count / (count + g_count) >= minconf
    if (!minconf.at_most(e.count, e.count + e.g_count)) continue;
    rules.push_back({std::move(e.itemset), target_class, e.count, e.g_count, db_size});
  }
  return rules;
}

MraResult minority_report(const TransactionDb& db, const MraConfig& cfg, MiningStats* stats) {
  MiningStats local;
  MiningStats& st = stats ? *stats : local;
  ScopedTimer timer(st);

  if (cfg.xi.num == 0 || !cfg.xi.at_most(1, 1)) throw Error("min-support must lie in (0, 1]");
  if (!cfg.minconf.at_most(1, 1)) throw Error("min-confidence must lie in [0, 1]");
  if (db.empty()) throw Error("database is empty");
  if (cfg.target_class >= db.symbols().size()) {
    throw Error("target class id " + std::to_string(cfg.target_class) + " is not in the symbol table");
  }

  MraResult result;
  result.min_count = min_count_for_support(cfg.xi, db.size());
  auto split = split_by_class(db, cfg.target_class);
  const auto& db1 = split.with_class;
  const auto& db0 = split.without_class;

  if (db1.empty()) {
    result.warnings.push_back("target class '" + db.symbols().token(cfg.target_class) +
                              "' does not occur; no rules produced");
    return result;
  }
  // xi >= |DB_1| / |DB|
  if (cfg.xi.num * static_cast<u128>(db.size()) >= static_cast<u128>(db1.size()) * cfg.xi.den) {
    result.warnings.push_back("min-support is not below the target class frequency " + std::to_string(db1.size()) +
                              "/" + std::to_string(db.size()) + "; few or no rules can be produced");
  }

  result.selected_items = select_rare_frequent_items(db1, result.min_count);
  const auto db1f = filter_items(db1, result.selected_items);
  const auto db0f = filter_items(db0, result.selected_items);

  auto counts = item_counts(db1f);
  const auto counts0 = item_counts(db0f);
  for (std::size_t a = 0; a < counts.size(); ++a) counts[a] += counts0[a];
  auto order = std::make_shared<const ItemOrder>(support_descending_order(std::span<const Count>(counts),
                                                                          result.selected_items));

  const FpTree fp1 = build_fp_tree(db1f, order, &st);
  const FpTree fp0 = build_fp_tree(db0f, order, &st);

  TisTree tis = fp_growth(fp1, result.min_count, &st);
  gfp_growth(tis, fp0, &st);

  result.rules = prune_to_rules(tis, db.size(), cfg.target_class, cfg.minconf, &result.warnings);
  result.tis = std::move(tis);
  return result;
}

std::string format_g6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_rules_csv(std::ostream& out, const std::vector<Rule>& rules, const SymbolTable& symbols) {
  out << "antecedent,consequent,support,confidence,count1,count0\n";
  for (const auto& r : rules) {
    out << format_itemset(symbols, r.antecedent, ';') << ',' << symbols.token(r.consequent) << ','
        << format_g6(r.support()) << ',' << format_g6(r.confidence()) << ',' << r.count1 << ',' << r.count0
        << '\n';
  }
}

void write_rules_jsonl(std::ostream& out, const std::vector<Rule>& rules, const SymbolTable& symbols) {
  for (const auto& r : rules) {
    nlohmann::ordered_json j;
    auto& ant = j["antecedent"] = nlohmann::ordered_json::array();
    for (Item a : r.antecedent) ant.push_back(symbols.token(a));
    j["consequent"] = symbols.token(r.consequent);
    j["support"] = std::stod(format_g6(r.support()));
    j["confidence"] = std::stod(format_g6(r.confidence()));
    j["count1"] = r.count1;
    j["count0"] = r.count0;
    out << j.dump() << '\n';
  }
}

}  // namespace gfpm
