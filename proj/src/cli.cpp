#include "gfpm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gfpm/benchgen.hpp"
#include "gfpm/error.hpp"
#include "gfpm/fp_growth.hpp"
#include "gfpm/fp_tree.hpp"
#include "gfpm/gfp_growth.hpp"
#include "gfpm/minority_report.hpp"
#include "gfpm/oracle.hpp"
#include "gfpm/tis_tree.hpp"

namespace gfpm::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Fraction parse_fraction(const std::string& text, const char* flag, bool allow_zero) {
  Fraction f;
  try {
    f = Fraction::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " expects a decimal fraction, got '" + text + "'");
  }
  if (!f.at_most(1, 1) || (!allow_zero && f.num == 0)) {
    throw UsageError(std::string(flag) + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]") + ", got " + text);
  }
  return f;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GFPM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("GFPM_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

// Writes to --output when given, else to the caller's stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed for " + path);
}

// Pattern-growth rendering order shared by every engine of `mine`.
ItemOrder display_order(const TransactionDb& db) {
  Itemset all(db.symbols().size());
  for (Item a = 0; a < all.size(); ++a) all[a] = a;
  return support_descending_order(db, all).reversed();
}

struct MineOptions {
  std::string input;
  std::string output;
  std::string min_support;
  std::uint64_t min_count = 0;
  std::string engine = "fp";
};

int cmd_mine(const MineOptions& o, CLI::Option* support_opt, CLI::Option* count_opt, std::ostream& out) {
  if ((support_opt->count() > 0) == (count_opt->count() > 0)) {
    throw UsageError("give exactly one of --min-support or --min-count");
  }
  if (count_opt->count() && o.min_count < 1) throw UsageError("--min-count must be at least 1");
  Fraction support;
  if (support_opt->count()) support = parse_fraction(o.min_support, "--min-support", false);

  const auto db = load_transactions_file(o.input);
  const Count min_count = count_opt->count() ? o.min_count : min_count_for_support(support, db.size());

  std::vector<std::pair<Itemset, Count>> found;
  if (o.engine == "fp") {
    Itemset all(db.symbols().size());
    for (Item a = 0; a < all.size(); ++a) all[a] = a;
    const FpTree tree = build_fp_tree(db, support_descending_order(db, all));
    fp_growth(tree, min_count, [&](std::span<const Item> s, Count c) { found.emplace_back(Itemset(s.begin(), s.end()), c); });
  } else {
    for (auto& e : oracle::bf_frequent(db, min_count)) found.emplace_back(std::move(e.itemset), e.count);
  }

  const auto order = display_order(db);
  struct Row {
    std::string itemset;
    Count count;
  };
  std::vector<Row> rows;
  rows.reserve(found.size());
  for (auto& [set, c] : found) {
    std::sort(set.begin(), set.end(), [&](Item x, Item y) { return order.rank(x) < order.rank(y); });
    rows.push_back({format_itemset(db.symbols(), set, ';'), c});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return x.count != y.count ? x.count > y.count : x.itemset < y.itemset;
  });

  std::ostringstream os;
  os << "itemset,count,support\n";
  for (const auto& r : rows)
    os << r.itemset << ',' << r.count << ','
       << format_g6(static_cast<double>(r.count) / static_cast<double>(db.size())) << '\n';
  emit(o.output, os.str(), out);
  return kExitOk;
}

struct CountOptions {
  std::string input;
  std::string targets;
  std::string output;
};

int cmd_count_targets(const CountOptions& o, std::ostream& out) {
  const auto db = load_transactions_file(o.input);
  const auto& symbols = db.symbols();

  std::ifstream tf(o.targets, std::ios::binary);
  if (!tf) throw Error("cannot open " + o.targets);

  struct Query {
    std::string label;
    Itemset items;
    bool known = true;
  };
  std::vector<Query> queries;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(tf, line)) {
    ++line_number;
    auto tokens = tokenize_line(line, line_number);
    if (tokens.empty()) continue;
    Query q;
    std::vector<std::string_view> seen;
    for (auto t : tokens) {
      if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
      seen.push_back(t);
      if (!q.label.empty()) q.label += ';';
      q.label += t;
      if (auto id = symbols.find(t)) {
        q.items.push_back(*id);
      } else {
        q.known = false;
      }
    }
    normalize(q.items);
    queries.push_back(std::move(q));
  }

  const auto counts = item_counts(db);
  Itemset present;
  for (Item a = 0; a < counts.size(); ++a)
    if (counts[a] > 0) present.push_back(a);
  auto order = std::make_shared<const ItemOrder>(support_descending_order(std::span<const Count>(counts), present));
  const FpTree tree = build_fp_tree(db, order);

  std::vector<Itemset> targets;
  for (const auto& q : queries)
    if (q.known) targets.push_back(q.items);
  auto built = build_tis_from_target_list(targets, std::make_shared<const ItemOrder>(order->reversed()), present);
  gfp_growth(built.tree, tree);

  std::ostringstream os;
  os << "itemset,count\n";
  for (const auto& q : queries) {
    Count c = 0;
    if (q.known) {
      const auto id = built.tree.find(q.items);
      if (id != TisTree::kNone) c = built.tree.node(id).g_count;
    }
    os << q.label << ',' << c << '\n';
  }
  emit(o.output, os.str(), out);
  return kExitOk;
}

struct MraOptions {
  std::string input;
  std::string output;
  std::string class_token;
  std::string min_support;
  std::string min_conf = "0";
  std::string format = "csv";
  bool stats = false;
};

int cmd_mra(const MraOptions& o, std::ostream& out, std::ostream& err) {
  const Fraction xi = parse_fraction(o.min_support, "--min-support", false);
  const Fraction minconf = parse_fraction(o.min_conf, "--min-conf", true);
  const auto db = load_transactions_file(o.input);
  const auto cls = db.symbols().find(o.class_token);
  if (!cls) throw Error("class token '" + o.class_token + "' does not occur in " + o.input);

  MiningStats stats;
  const auto result = minority_report(db, MraConfig{xi, minconf, *cls}, &stats);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';

  std::ostringstream os;
  if (o.format == "jsonl") {
    write_rules_jsonl(os, result.rules, db.symbols());
  } else {
    write_rules_csv(os, result.rules, db.symbols());
  }
  if (o.stats) {
    os << "# min_count=" << result.min_count << '\n'
       << "# conditional_trees_built=" << stats.conditional_trees_built << '\n'
       << "# nodes_allocated=" << stats.nodes_allocated << '\n'
       << "# header_probes=" << stats.header_probes << '\n';
    err << "wall_ms=" << format_g6(stats.wall_ms()) << '\n';
  }
  emit(o.output, os.str(), out);
  return kExitOk;
}

struct GenOptions {
  SynthConfig cfg;
  std::string output;
};

int cmd_gen(GenOptions o, CLI::Option* seed_opt, std::ostream& out) {
  if (!seed_opt->count()) o.cfg.seed = default_seed();
  try {
    o.cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto db = generate(o.cfg);
  std::ostringstream os;
  os << describe(o.cfg) << '\n';
  for (const auto& t : db) {
    bool first = true;
    for (Item a : t) {
      if (!first) os << ' ';
      os << db.symbols().token(a);
      first = false;
    }
    os << '\n';
  }
  emit(o.output, os.str(), out);
  return kExitOk;
}

struct BenchOptions {
  SynthConfig cfg;
  std::string input;
  std::string class_token = "1";
  std::string min_support = "5e-5";
  std::string min_conf = "0";
  std::string scenario;
  std::string output;
  std::uint32_t runs = 20;
  std::uint32_t jobs = 1;
};

int cmd_bench(BenchOptions o, CLI::Option* seed_opt, std::ostream& out, std::ostream& err) {
  const Fraction xi = parse_fraction(o.min_support, "--min-support", false);
  const Fraction minconf = parse_fraction(o.min_conf, "--min-conf", true);
  if (o.runs < 1) throw UsageError("--runs must be at least 1");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (!seed_opt->count()) o.cfg.seed = default_seed();

  std::vector<BenchRecord> records;
  if (!o.input.empty()) {
    const auto db = load_transactions_file(o.input);
    const auto cls = db.symbols().find(o.class_token);
    if (!cls) throw Error("class token '" + o.class_token + "' does not occur in " + o.input);
    records.push_back(run_benchmark(db, {xi, minconf, *cls}, o.scenario.empty() ? o.input : o.scenario, 0));
  } else {
    try {
      o.cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (o.scenario.empty()) {
      o.scenario = "n" + std::to_string(o.cfg.n_transactions) + "_m" + std::to_string(o.cfg.n_items) + "_px" +
                   format_g6(o.cfg.p_x) + "_py" + format_g6(o.cfg.p_y);
    }
    records.resize(o.runs);
    std::vector<std::string> failures(o.runs);
    auto work = [&](std::uint32_t first) {
      for (std::uint32_t r = first; r < o.runs; r += o.jobs) {
        SynthConfig c = o.cfg;
        c.seed = o.cfg.seed + r;
        try {
          const auto db = generate(c);
          records[r] = run_benchmark(db, {xi, minconf, db.item("1")}, o.scenario, c.seed);
        } catch (const std::exception& e) {
          failures[r] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::uint32_t j = 1; j < std::min(o.jobs, o.runs); ++j) pool.emplace_back(work, j);
    work(0);
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
      if (!f.empty()) throw Error(f);
  }

  std::ostringstream os;
  os << "# generator=" << kGeneratorName << '\n';
  write_bench_header(os);
  double ratio_sum = 0;
  for (const auto& rec : records) {
    write_bench_rows(os, rec);
    ratio_sum += rec.time_ratio();
  }
  err << "mean wall-time ratio fp-growth/mra: " << format_g6(ratio_sum / static_cast<double>(records.size()))
      << " over " << records.size() << " run(s)\n";
  emit(o.output, os.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequent-pattern mining: FP-growth, guided target counting and minority-class rules", "gfpm"};
  app.require_subcommand(1);

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent itemsets to CSV");
  mine_cmd->add_option("input", mine.input, "Basket file")->required();
  auto* mine_support = mine_cmd->add_option("--min-support", mine.min_support, "Minimum support fraction");
  auto* mine_count = mine_cmd->add_option("--min-count", mine.min_count, "Minimum absolute count");
  mine_cmd->add_option("-o,--output", mine.output, "Output CSV (default stdout)");
  mine_cmd->add_option("--engine", mine.engine, "fp or bruteforce")->check(CLI::IsMember({"fp", "bruteforce"}));

  CountOptions count;
  auto* count_cmd = app.add_subcommand("count-targets", "Count every itemset of a target list");
  count_cmd->add_option("input", count.input, "Basket file")->required();
  count_cmd->add_option("targets", count.targets, "Target list, one itemset per line")->required();
  count_cmd->add_option("-o,--output", count.output, "Output CSV (default stdout)");

  MraOptions mra;
  auto* mra_cmd = app.add_subcommand("mra", "Mine rules for a rare target class");
  mra_cmd->add_option("input", mra.input, "Basket file")->required();
  mra_cmd->add_option("--class", mra.class_token, "Target class token")->required();
  mra_cmd->add_option("--min-support", mra.min_support, "Minimum rule support fraction")->required();
  mra_cmd->add_option("--min-conf", mra.min_conf, "Minimum confidence fraction")->capture_default_str();
  mra_cmd->add_option("-o,--output", mra.output, "Output file (default stdout)");
  mra_cmd->add_option("--format", mra.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  mra_cmd->add_flag("--stats", mra.stats, "Append mining counters as comment lines");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic imbalanced basket file");
  gen_cmd->add_option("--transactions", gen.cfg.n_transactions)->capture_default_str();
  gen_cmd->add_option("--items", gen.cfg.n_items)->capture_default_str();
  gen_cmd->add_option("--px", gen.cfg.p_x, "Per-item inclusion probability")->capture_default_str();
  gen_cmd->add_option("--py", gen.cfg.p_y, "Target class probability")->capture_default_str();
  auto* gen_seed = gen_cmd->add_option("--seed", gen.cfg.seed, "Seed (default: $GFPM_SEED or 1)");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare full FP-growth against MRA");
  bench_cmd->add_option("--transactions", bench.cfg.n_transactions)->capture_default_str();
  bench_cmd->add_option("--items", bench.cfg.n_items)->capture_default_str();
  bench_cmd->add_option("--px", bench.cfg.p_x)->capture_default_str();
  bench_cmd->add_option("--py", bench.cfg.p_y)->capture_default_str();
  auto* bench_seed = bench_cmd->add_option("--seed", bench.cfg.seed, "First seed (default: $GFPM_SEED or 1)");
  bench_cmd->add_option("--runs", bench.runs, "Monte Carlo repetitions")->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Repetitions run in parallel")->capture_default_str();
  bench_cmd->add_option("--min-support", bench.min_support)->capture_default_str();
  bench_cmd->add_option("--min-conf", bench.min_conf)->capture_default_str();
  bench_cmd->add_option("--scenario", bench.scenario, "Scenario label");
  bench_cmd->add_option("--input", bench.input, "Benchmark an existing basket file instead");
  bench_cmd->add_option("--class", bench.class_token, "Target class token for --input")->capture_default_str();
  bench_cmd->add_option("-o,--output", bench.output, "Output CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine, mine_support, mine_count, out);
    if (count_cmd->parsed()) return cmd_count_targets(count, out);
    if (mra_cmd->parsed()) return cmd_mra(mra, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen, gen_seed, out);
    if (bench_cmd->parsed()) return cmd_bench(bench, bench_seed, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace gfpm::cli
