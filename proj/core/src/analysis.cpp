#include "wshift/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "wshift/errors.hpp"
#include "wshift/winning.hpp"

namespace wshift {

namespace {

constexpr NodeId kEmpty = NodeStore::kEmpty;
constexpr NodeId kLeaf = NodeStore::kLeaf;

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

}  // namespace

MaxSum max_sum(const LanguageTrie& t) {
  if (t.is_empty()) throw InputError("max_sum of an empty trie");
  const auto& store = *t.store();
  const auto k = store.alphabet_size();
  std::unordered_map<NodeId, std::uint64_t> best;
  std::function<std::uint64_t(NodeId)> solve = [&](NodeId node) -> std::uint64_t {
    if (node == kLeaf) return 0;
    if (auto it = best.find(node); it != best.end()) return it->second;
    std::uint64_t value = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const auto c = store.child(node, static_cast<Symbol>(a));
      if (c != kEmpty) value = std::max(value, a + solve(c));
    }
    best.emplace(node, value);
    return value;
  };

  MaxSum result{solve(t.root()), {}};
  NodeId node = t.root();
  while (node != kLeaf) {
    const auto target = solve(node);
    for (std::size_t a = 0; a < k; ++a) {
      const auto c = store.child(node, static_cast<Symbol>(a));
      if (c != kEmpty && a + solve(c) == target) {
        result.witness.push_back(static_cast<Symbol>(a));
        node = c;
        break;
      }
    }
  }
  return result;
}

std::vector<AlphaRow> alpha_table(const LanguageSource& source, std::size_t n_max) {
  auto store = make_store(source.alphabet_size());
  WinningEngine engine(store);
  std::vector<AlphaRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto winning = engine.winning_trie(source.level(n, store));
    const auto s = max_sum(winning).sum;
    rows.push_back({n, s, Rational(static_cast<std::int64_t>(s), static_cast<std::int64_t>(n))});
  }
  return rows;
}

bool is_subadditive(const std::vector<AlphaRow>& rows) {
  std::unordered_map<std::size_t, std::uint64_t> s;
  for (const auto& row : rows) s[row.n] = row.max_sum;
  for (const auto& [m, sm] : s)
    for (const auto& [n, sn] : s)
      if (auto it = s.find(m + n); it != s.end() && it->second > sm + sn) return false;
  return true;
}

std::optional<Word> steady_word(const LanguageTrie& t, const Rational& alpha) {
  if (t.is_empty()) return std::nullopt;
  const auto& store = *t.store();
  const auto k = store.alphabet_size();
  const auto num = alpha.numerator();
  const auto den = alpha.denominator();
  std::unordered_set<std::uint64_t> dead;  // (node, running sum) with no completion
  Word path;
  std::function<bool(NodeId, std::uint64_t)> search = [&](NodeId node, std::uint64_t sum) -> bool {
    if (node == kLeaf) return true;
    const auto key = (std::uint64_t{node} << 32) | sum;
    if (dead.contains(key)) return false;
    const auto length = static_cast<std::int64_t>(path.size() + 1);
    for (std::size_t a = 0; a < k; ++a) {
      const auto c = store.child(node, static_cast<Symbol>(a));
      if (c == kEmpty) continue;
      const auto next_sum = sum + a;
      if (static_cast<std::int64_t>(next_sum) * den < num * length) continue;
      path.push_back(static_cast<Symbol>(a));
      if (search(c, next_sum)) return true;
      path.pop_back();
    }
    dead.insert(key);
    return false;
  };
  if (!search(t.root(), 0)) return std::nullopt;
  return path;
}

SteadyAlpha max_steady_alpha(const LanguageTrie& t) {
  if (t.is_empty()) throw InputError("max_steady_alpha of an empty trie");
  if (t.depth() == 0) throw InputError("max_steady_alpha needs words of positive length");
  const auto n = static_cast<std::int64_t>(t.depth());
  const auto top = static_cast<std::int64_t>(t.alphabet_size() - 1);
  // The optimum is some prefix density s/d.
  std::vector<Rational> candidates;
  for (std::int64_t d = 1; d <= n; ++d)
    for (std::int64_t s = 0; s <= d * top; ++s) candidates.emplace_back(s, d);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0;  // feasible: density 0 always is
  std::size_t hi = candidates.size();
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    if (steady_word(t, candidates[mid])) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {candidates[lo], *steady_word(t, candidates[lo])};
}

namespace {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  boost::multiprecision::uint128_t value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

LowWeightBound low_weight_count_bound(std::size_t n, std::size_t k) {
  if (2 * k > n) throw InputError("low_weight_count_bound needs k <= n/2");
  if (k >= 64) throw BudgetExceeded("low_weight_count_bound supports k < 64");
  LowWeightBound out;
  for (std::size_t j = 0; j <= k; ++j) out.exact += binomial(n, j);
  const boost::multiprecision::uint128_t bound = boost::multiprecision::uint128_t(binomial(n, k)) << k;
  if (bound > std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded("binomial bound overflows 64 bits");
  out.binom_bound = static_cast<std::uint64_t>(bound);
  out.analytic_bound =
      k == 0 ? 1.0
             : std::pow(static_cast<double>(n) * std::numbers::e / static_cast<double>(k), static_cast<double>(k)) *
                   std::pow(2.0, static_cast<double>(k));
  return out;
}

double low_weight_growth(double beta) {
  if (beta <= 0) return 1.0;
  return std::pow(std::numbers::e / beta, beta) * std::pow(2.0, beta);
}

std::optional<Rational> beta_for_alpha(double alpha, const Rational& grid) {
  if (!(alpha > 1.0)) throw InputError("beta_for_alpha needs alpha > 1");
  if (grid <= 0) throw InputError("beta grid must be positive");
  constexpr double kMargin = 1e-9;
  std::optional<Rational> best;
  // The growth base is increasing on (0, 2), so the scan stops at the first failure.
  for (std::int64_t m = 1; grid * m <= 1; ++m) {
    const Rational beta = grid * m;
    if (!(low_weight_growth(to_double(beta)) < alpha - kMargin)) break;
    best = beta;
  }
  return best;
}

DensityCertificate density_certificate(const LanguageSource& source, std::size_t n, const Rational& beta) {
  if (beta < 0) throw InputError("beta must be nonnegative");
  const auto language = source.level(n);
  const auto winning = winning_trie(language);
  DensityCertificate out;
  out.n = n;
  out.beta = beta;
  out.required = ceil_times(beta, static_cast<std::int64_t>(n));
  const auto binary = binary_restrict(winning);
  if (binary.is_empty()) return out;
  const auto best = max_sum(binary);
  out.achieved = best.sum;
  out.witness = best.witness;
  out.pass = static_cast<std::int64_t>(best.sum) >= out.required;
  return out;
}

DensityReport analyze(const LanguageSource& source, std::size_t n, const AnalysisOptions& options) {
  if (n == 0) throw InputError("analyze needs n >= 1");
  DensityReport report;
  report.approximation = source.under_approximation();
  report.rows = alpha_table(source, n);
  report.subadditive = is_subadditive(report.rows);
  report.alpha_upper = report.rows.back().ratio;

  const auto winning = winning_trie(source.level(n));
  const auto binary = binary_restrict(winning);
  report.best_steady = max_steady_alpha(binary);
  const auto support_count = binarize(winning).count();
  report.empirical_growth = std::pow(static_cast<double>(support_count), 1.0 / static_cast<double>(n));
  if (report.empirical_growth > 1.0) report.beta = beta_for_alpha(report.empirical_growth, options.grid);

  if (options.beta) {
    report.certificate = density_certificate(source, n, *options.beta);
  } else if (report.beta) {
    report.certificate = density_certificate(source, n, *report.beta);
  }
  if (options.alpha) {
    report.requested_alpha = options.alpha;
    report.steady_at_alpha = steady_word(binary, *options.alpha);
  }
  return report;
}

std::string rows_csv(const std::vector<AlphaRow>& rows) {
  std::ostringstream out;
  out << "n,s_n,s_n_over_n,s_n_over_n_decimal\n";
  for (const auto& row : rows)
    out << row.n << ',' << row.max_sum << ',' << format_rational(row.ratio) << ','
        << format_double(to_double(row.ratio)) << '\n';
  return out.str();
}

nlohmann::json summary_json(const DensityReport& report, std::size_t alphabet_size) {
  nlohmann::json out;
  out["n"] = report.rows.empty() ? 0 : report.rows.back().n;
  out["alpha_upper"] = format_rational(report.alpha_upper);
  out["subadditive"] = report.subadditive;
  out["best_steady_alpha"] = format_rational(report.best_steady.alpha);
  out["witness"] = format_word(report.best_steady.witness, 2);
  out["empirical_growth"] = format_double(report.empirical_growth);
  out["beta"] = report.beta ? nlohmann::json(format_rational(*report.beta)) : nlohmann::json(nullptr);
  if (report.certificate) {
    const auto& c = *report.certificate;
    out["certificate"] = {{"beta", format_rational(c.beta)},
                          {"required", c.required},
                          {"achieved", c.achieved},
                          {"witness", format_word(c.witness, 2)},
                          {"pass", c.pass}};
  }
  if (report.requested_alpha) {
    out["steady_word"] = {{"alpha", format_rational(*report.requested_alpha)},
                          {"witness", report.steady_at_alpha ? nlohmann::json(format_word(*report.steady_at_alpha, 2))
                                                             : nlohmann::json(nullptr)}};
  }
  out["alphabet_size"] = alphabet_size;
  out["approximation"] = report.approximation;
  return out;
}

}  // namespace wshift
