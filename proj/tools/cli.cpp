#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wshift/analysis.hpp"
#include "wshift/errors.hpp"
#include "wshift/gallery.hpp"
#include "wshift/game.hpp"
#include "wshift/language.hpp"
#include "wshift/oracle.hpp"
#include "wshift/winning.hpp"
#include "wshift/witness.hpp"

namespace wshift::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string spec;
  std::optional<std::size_t> n;
  std::string n_range;
  std::string alpha;
  std::string beta;
  std::string grid = "1/100";
  std::string structure;
  std::size_t budget_nodes = NodeStore::kDefaultMaxNodes;
  std::size_t max_n = 24;
  std::uint64_t max_leaves = 32;
  std::string out_dir;
  std::string format = "json";
  std::string opponent = "human";
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::pair<std::size_t, std::size_t> level_range(const RunConfig& cfg, std::size_t default_from) {
  std::size_t from = 0, to = 0;
  if (!cfg.n_range.empty()) {
    const auto dots = cfg.n_range.find("..");
    if (dots == std::string::npos) throw InputError("--n-range must look like a..b");
    try {
      from = std::stoul(cfg.n_range.substr(0, dots));
      to = std::stoul(cfg.n_range.substr(dots + 2));
    } catch (const std::exception&) {
      throw InputError("--n-range must look like a..b");
    }
    if (from > to) throw InputError("--n-range is empty");
  } else if (cfg.n) {
    from = std::min(default_from, *cfg.n);
    to = *cfg.n;
  } else {
    throw InputError("one of --n or --n-range is required");
  }
  if (to > cfg.max_n)
    throw BudgetExceeded("n = " + std::to_string(to) + " exceeds --max-n " + std::to_string(cfg.max_n));
  return {from, to};
}

/// Flat CSV rendering of a JSON object: one header row, one value row.
/// Nested objects use dotted keys and arrays join with ';'.
void flatten(const json& value, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& cells) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) flatten(item, prefix.empty() ? key : prefix + "." + key, cells);
    return;
  }
  std::string text;
  if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i > 0) text += ';';
      text += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
    }
  } else if (value.is_string()) {
    text = value.get<std::string>();
  } else if (!value.is_null()) {
    text = value.dump();
  }
  cells.emplace_back(prefix, text);
}

std::string render_record(const json& record, const std::string& format) {
  if (format == "json") return record.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(record, "", cells);
  std::string header, row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      header += ',';
      row += ',';
    }
    header += cells[i].first;
    row += cells[i].second;
  }
  return header + "\n" + row + "\n";
}

std::string record_extension(const std::string& format) { return format == "json" ? ".json" : ".csv"; }

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  const auto path = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path.string() + "'");
  file << content;
}

SubshiftSpec load(const RunConfig& cfg) {
  if (cfg.spec.empty()) throw InputError("--spec is required");
  return resolve_spec_argument(cfg.spec);
}

int cmd_enumerate(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto [from, to] = level_range(cfg, 1);
  const auto language = source->level(to);
  const auto words = serialize(language);
  const auto counts = counts_csv(*source, from, to);
  std::ostringstream summary;
  summary << "n=" << to << " count=" << language.count();
  if (source->under_approximation()) summary << " approximation=true";
  if (!cfg.out_dir.empty()) {
    write_file(cfg, "L_" + std::to_string(to) + ".txt", words);
    write_file(cfg, "counts.csv", counts);
    io.out << summary.str() << '\n';
  } else {
    io.out << words;
    io.err << summary.str() << '\n';
  }
  return kSuccess;
}

int cmd_winning(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto [from, to] = level_range(cfg, cfg.n.value_or(0));
  auto store = make_store(source->alphabet_size());
  WinningEngine engine(store);
  bool pass = true;
  json reports = json::array();
  std::string last_words;
  for (std::size_t n = from; n <= to; ++n) {
    const auto language = source->level(n, store);
    const auto winning = engine.winning_trie(language);
    const auto report = cardinality_check(language, winning);
    auto record = to_json(report);
    record["hereditary"] = hereditary_check(winning);
    if (source->under_approximation()) record["approximation"] = true;
    pass = pass && report.pass && record["hereditary"].get<bool>();
    reports.push_back(record);
    if (n == to) last_words = serialize(winning);
  }
  const json result = reports.size() == 1 ? reports.front() : json{{"levels", reports}};
  std::ostringstream summary;
  for (const auto& r : reports)
    summary << "n=" << r["n"] << " lang_count=" << r["lang_count"] << " winning_count=" << r["winning_count"]
            << " pass=" << (r["pass"].get<bool>() ? "true" : "false") << '\n';
  if (!cfg.out_dir.empty()) {
    write_file(cfg, "W_" + std::to_string(to) + ".txt", last_words);
    if (cfg.format == "json") {
      write_file(cfg, "cardinality.json", result.dump(2) + "\n");
    } else {
      std::string csv = "n,lang_count,winning_count,pass,hereditary\n";
      for (const auto& r : reports)
        csv += r["n"].dump() + "," + r["lang_count"].dump() + "," + r["winning_count"].dump() + "," +
               r["pass"].dump() + "," + r["hereditary"].dump() + "\n";
      write_file(cfg, "cardinality.csv", csv);
    }
    io.out << summary.str();
  } else {
    io.out << last_words;
    io.err << summary.str();
  }
  return pass ? kSuccess : kCheckFailed;
}

int cmd_analyze(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto [from, to] = level_range(cfg, 1);
  (void)from;
  AnalysisOptions options;
  options.grid = parse_rational(cfg.grid);
  if (!cfg.alpha.empty()) options.alpha = parse_rational(cfg.alpha);
  if (!cfg.beta.empty()) options.beta = parse_rational(cfg.beta);
  const auto report = analyze(*source, to, options);
  const auto summary = summary_json(report, source->alphabet_size());
  const auto csv = rows_csv(report.rows);
  std::ostringstream human;
  human << "n=" << to << " alpha_upper=" << format_rational(report.alpha_upper)
        << " best_steady_alpha=" << format_rational(report.best_steady.alpha)
        << " witness=" << format_word(report.best_steady.witness, 2);
  if (report.approximation) human << " approximation=true";
  if (!cfg.out_dir.empty()) {
    write_file(cfg, "density.csv", csv);
    write_file(cfg, "summary" + record_extension(cfg.format), render_record(summary, cfg.format));
    io.out << human.str() << '\n';
  } else {
    io.out << csv << render_record(summary, cfg.format);
    io.err << human.str() << '\n';
  }
  const bool certificate_ok = !report.certificate || report.certificate->pass;
  return report.subadditive && certificate_ok ? kSuccess : kCheckFailed;
}

int cmd_witness(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto k = source->alphabet_size();
  if (cfg.structure.empty()) throw InputError("--structure is required");
  const BranchingStructure z(parse_word(cfg.structure, k));
  if (cfg.n && *cfg.n != z.size()) throw InputError("--n disagrees with the structure length");
  if (z.size() > cfg.max_n) throw BudgetExceeded("structure length exceeds --max-n");

  auto store = make_store(k);
  WinningEngine engine(store);
  const auto language = source->level(z.size(), store);
  const auto tree = extract_tree(engine, language, z);
  const bool tree_ok = verify_tree(tree, language);
  json summary = {{"structure", format_word(z.view(), k)},
                  {"n", z.size()},
                  {"leaves", tree.leaves.size()},
                  {"tree_verified", tree_ok}};
  bool independence_ok = true;
  if (k == 2) {
    const auto set = independence_from_structure(engine, z, language);
    summary["independence"] = to_json(set);
    independence_ok = set.verified;
  }
  if (source->under_approximation()) summary["approximation"] = true;
  const auto tree_text = format_tree(tree, k);
  if (!cfg.out_dir.empty()) {
    write_file(cfg, "tree.txt", tree_text);
    write_file(cfg, "summary" + record_extension(cfg.format), render_record(summary, cfg.format));
    io.out << "leaves=" << tree.leaves.size() << " tree_verified=" << (tree_ok ? "true" : "false") << '\n';
  } else {
    io.out << tree_text << render_record(summary, cfg.format);
  }
  return tree_ok && independence_ok ? kSuccess : kCheckFailed;
}

int cmd_crosscheck(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto [from, to] = level_range(cfg, 1);
  const auto k = source->alphabet_size();
  OracleBudget budget;
  budget.max_leaves = cfg.max_leaves;

  auto store = make_store(k);
  WinningEngine engine(store);
  bool pass = true;
  json levels = json::array();
  for (std::size_t n = from; n <= to; ++n) {
    const auto language = source->level(n, store);
    const auto winning = engine.winning_trie(language);
    const auto report = oracle_vs_winning(language, winning, budget);
    auto record = to_json(report, k);
    pass = pass && report.pass();
    if (k == 2 && !language.is_empty()) {
      const auto brute = bruteforce_independence(language, n);
      const auto derived = max_sum(binary_restrict(winning)).sum;
      const bool ok = derived <= brute.size;
      record["independence"] = {{"bruteforce_size", brute.size},
                                {"bruteforce_positions", brute.positions},
                                {"best_structure_support", derived},
                                {"pass", ok}};
      pass = pass && ok;
    }
    levels.push_back(record);
    io.err << "n=" << n << " structures=" << report.structures << " mismatches=" << report.mismatches.size()
           << '\n';
  }
  const json result = {{"levels", levels}, {"pass", pass}};
  if (!cfg.out_dir.empty()) {
    write_file(cfg, "crosscheck" + record_extension(cfg.format), render_record(result, cfg.format));
    io.out << "pass=" << (pass ? "true" : "false") << '\n';
  } else {
    io.out << render_record(result, cfg.format);
  }
  return pass ? kSuccess : kCheckFailed;
}

int cmd_game(const RunConfig& cfg, Io io) {
  const auto source = open_source(load(cfg));
  const auto k = source->alphabet_size();
  if (cfg.structure.empty()) throw InputError("--structure is required");
  const BranchingStructure z(parse_word(cfg.structure, k));
  if (z.size() > cfg.max_n) throw BudgetExceeded("structure length exceeds --max-n");
  GameEngine engine(source->level(z.size()));
  if (cfg.opponent == "exhaustive") {
    const auto report = exhaustive_adversary(engine, z);
    io.out << "plays=" << report.plays << " wins=" << report.wins << '\n';
    io.out << (report.pass() ? "WIN" : "LOSS") << " all_plays_in_language=" << (report.pass() ? "true" : "false")
           << '\n';
    return report.pass() ? kSuccess : kCheckFailed;
  }
  Opponent opponent = Opponent::Human;
  if (cfg.opponent == "max") {
    opponent = Opponent::Max;
  } else if (cfg.opponent == "min") {
    opponent = Opponent::Min;
  } else if (cfg.opponent != "human") {
    throw InputError("--opponent must be human, max, min or exhaustive");
  }
  return play_game(engine, z, opponent, io.in, io.out) ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"wshift: winning shifts, tree witnesses and independence sets of subshifts"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "Builtin name (full:<k>, golden, gap:<rule>, prop3:<base>, sft:<w>,...) "
                                        "or path to a JSON spec document")
        ->required();
    sub->add_option("--n", cfg.n, "Word length");
    sub->add_option("--n-range", cfg.n_range, "Range of word lengths a..b");
    sub->add_option("--budget-nodes", cfg.budget_nodes, "Maximum trie nodes per store")
        ->default_val(NodeStore::kDefaultMaxNodes);
    sub->add_option("--max-n", cfg.max_n, "Largest word length accepted")->default_val(24);
    sub->add_option("--out", cfg.out_dir, "Directory for report files");
    sub->add_option("--format", cfg.format, "Structured record format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("json");
  };

  auto* enumerate = app.add_subcommand("enumerate", "List L_n and the word-count table");
  add_common(enumerate);
  auto* winning = app.add_subcommand("winning", "Compute W(L_n) and check word-count preservation");
  add_common(winning);
  auto* analyze_cmd = app.add_subcommand("analyze", "Max-sum table, steady branching density and beta bounds");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--alpha", cfg.alpha, "Density threshold p/q for a steady word");
  analyze_cmd->add_option("--beta", cfg.beta, "Density p/q to certify");
  analyze_cmd->add_option("--grid", cfg.grid, "Grid step p/q for the beta search")->default_val("1/100");
  auto* witness = app.add_subcommand("witness", "Extract and verify a tree for a branching structure");
  add_common(witness);
  witness->add_option("--structure", cfg.structure, "Branching structure z")->required();
  auto* crosscheck = app.add_subcommand("crosscheck", "Compare the recursion with brute-force tree search");
  add_common(crosscheck);
  crosscheck->add_option("--max-leaves", cfg.max_leaves, "Leaf budget of the tree oracle")->default_val(32);
  auto* game = app.add_subcommand("game", "Play the word-building game as the builder");
  add_common(game);
  game->add_option("--structure", cfg.structure, "Branching structure z")->required();
  game->add_option("--opponent", cfg.opponent, "human, max, min or exhaustive")->default_val("human");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (cfg.budget_nodes < 2) throw InputError("--budget-nodes must be at least 2");
    set_default_node_budget(cfg.budget_nodes);
    const Io io{in, out, err};
    if (*enumerate) return cmd_enumerate(cfg, io);
    if (*winning) return cmd_winning(cfg, io);
    if (*analyze_cmd) return cmd_analyze(cfg, io);
    if (*witness) return cmd_witness(cfg, io);
    if (*crosscheck) return cmd_crosscheck(cfg, io);
    if (*game) return cmd_game(cfg, io);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const NotWinning& e) {
    err << "losing position: " << e.what() << '\n';
    return kLosingPosition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace wshift::cli
