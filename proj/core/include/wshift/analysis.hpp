#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wshift/language.hpp"

namespace wshift {

struct MaxSum {
  std::uint64_t sum = 0;
  Word witness;  // lexicographically least among maximizers
};

/// Largest word sum in t, by one bottom-up pass. Throws InputError if empty.
MaxSum max_sum(const LanguageTrie& t);

struct AlphaRow {
  std::size_t n = 0;
  std::uint64_t max_sum = 0;
  Rational ratio;  // s_n / n, an upper bound on lim s_n / n
};

/// s_n of the winning levels W(L_1) .. W(L_{n_max}).
std::vector<AlphaRow> alpha_table(const LanguageSource& source, std::size_t n_max);

/// s_{m+n} <= s_m + s_n for every pair of rows with m + n in range.
bool is_subadditive(const std::vector<AlphaRow>& rows);

/// Lexicographically least word of t whose nonempty prefixes all have
/// density >= alpha, or nullopt.
std::optional<Word> steady_word(const LanguageTrie& t, const Rational& alpha);

struct SteadyAlpha {
  Rational alpha;
  Word witness;
};

/// max over words of the minimum prefix density, with the least witness.
/// Throws InputError on an empty trie or depth 0.
SteadyAlpha max_steady_alpha(const LanguageTrie& t);

struct LowWeightBound {
  std::uint64_t exact = 0;        // sum_{j <= k} C(n, j)
  std::uint64_t binom_bound = 0;  // C(n, k) * 2^k
  double analytic_bound = 0;      // (n e / k)^k * 2^k, 1 when k = 0
};

/// Binary words of length n with at most k ones, and the two upper bounds
/// used to show their number grows slower than any alpha^n for small k/n.
/// Requires 0 <= k <= n / 2.
LowWeightBound low_weight_count_bound(std::size_t n, std::size_t k);

/// (e / beta)^beta * 2^beta: growth base of words with at most beta*n ones.
double low_weight_growth(double beta);

/// Largest beta = m * grid (m >= 1, beta <= 1) with low_weight_growth(beta)
/// below alpha by more than 1e-9. nullopt if the first grid step fails.
/// Throws InputError unless alpha > 1 and grid > 0.
std::optional<Rational> beta_for_alpha(double alpha, const Rational& grid);

struct DensityCertificate {
  bool pass = false;
  std::size_t n = 0;
  Rational beta;
  std::int64_t required = 0;  // ceil(beta * n)
  std::uint64_t achieved = 0;
  Word witness;
};

/// Looks for a binary winning structure of length n with at least
/// ceil(beta * n) ones.
DensityCertificate density_certificate(const LanguageSource& source, std::size_t n, const Rational& beta);

struct DensityReport {
  std::vector<AlphaRow> rows;
  bool subadditive = true;
  Rational alpha_upper;
  SteadyAlpha best_steady;
  /// |binarize(W(L_n))|^(1/n)
  double empirical_growth = 0;
  std::optional<Rational> beta;
  std::optional<DensityCertificate> certificate;
  std::optional<Word> steady_at_alpha;
  std::optional<Rational> requested_alpha;
  bool approximation = false;
};

struct AnalysisOptions {
  Rational grid{1, 100};
  std::optional<Rational> alpha;
  std::optional<Rational> beta;
};

DensityReport analyze(const LanguageSource& source, std::size_t n, const AnalysisOptions& options = {});

std::string rows_csv(const std::vector<AlphaRow>& rows);
nlohmann::json summary_json(const DensityReport& report, std::size_t alphabet_size);

}  // namespace wshift
