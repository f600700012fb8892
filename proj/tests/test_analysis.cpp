#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wshift/analysis.hpp"
#include "wshift/errors.hpp"
#include "wshift/gallery.hpp"
#include "wshift/language.hpp"
#include "wshift/winning.hpp"

using namespace wshift;
using namespace wshift::testing;

namespace {

LanguageTrie winning_level(std::string_view name, std::size_t n) {
  return winning_trie(open_source(builtin_spec(name))->level(n)).trie();
}

/// Exhaustive max over words of the minimum prefix density.
Rational naive_steady(const LanguageTrie& t) {
  Rational best(-1);
  t.for_each_word([&](std::span<const Symbol> word) { best = std::max(best, min_prefix_density(word)); });
  return best;
}

}  // namespace

TEST_CASE("max_sum") {
  const auto g5 = max_sum(winning_level("golden", 5));
  CHECK(g5.sum == 3);
  CHECK(g5.witness == w("10101"));
  const auto full = max_sum(winning_level("full:2", 6));
  CHECK(full.sum == 6);
  CHECK(full.witness == w("111111"));
  CHECK(max_sum(winning_level("sft:00", 2)).sum == 1);
  CHECK_THROWS_AS(max_sum(LanguageTrie::empty(make_store(2), 3)), InputError);
}

TEST_CASE("alpha_table") {
  const auto golden = alpha_table(*open_source(golden_mean()), 12);
  REQUIRE(golden.size() == 12);
  for (const auto& row : golden) {
    CHECK(row.max_sum == (row.n + 1) / 2);
    CHECK(row.ratio == Rational(static_cast<std::int64_t>((row.n + 1) / 2), static_cast<std::int64_t>(row.n)));
  }
  CHECK(is_subadditive(golden));

  const auto f00 = alpha_table(*open_source(builtin_spec("sft:00")), 12);
  for (const auto& row : f00) CHECK(row.max_sum == (row.n + 1) / 2);

  std::vector<AlphaRow> broken{{1, 1, 1}, {2, 3, Rational(3, 2)}};
  CHECK_FALSE(is_subadditive(broken));
}

TEST_CASE("steady_word") {
  const auto g4 = winning_level("golden", 4);
  CHECK(steady_word(g4, Rational(1, 2)) == w("1010"));
  CHECK_FALSE(steady_word(g4, Rational(3, 5)).has_value());
  CHECK(steady_word(g4, Rational(0)) == g4.first_word());
}

TEST_CASE("max_steady_alpha") {
  const auto g20 = max_steady_alpha(winning_level("golden", 20));
  CHECK(g20.alpha == Rational(1, 2));
  CHECK(g20.witness == w("10101010101010101010"));
  const auto full = max_steady_alpha(winning_level("full:2", 7));
  CHECK(full.alpha == Rational(1));
  CHECK(full.witness == w("1111111"));
  CHECK(max_steady_alpha(trie_of(2, 5, {w("00000")})).alpha == Rational(0));
  CHECK_THROWS_AS(max_steady_alpha(LanguageTrie::empty(make_store(2), 3)), InputError);
}

TEST_CASE("low_weight_count_bound") {
  const auto a = low_weight_count_bound(10, 2);
  CHECK(a.exact == 56);
  CHECK(a.binom_bound == 180);
  CHECK(a.analytic_bound == doctest::Approx(738.9056).epsilon(1e-6));
  const auto b = low_weight_count_bound(9, 0);
  CHECK(b.exact == 1);
  CHECK(b.binom_bound == 1);
  CHECK(b.analytic_bound == 1);
  const auto c = low_weight_count_bound(8, 4);
  CHECK(c.exact == 163);
  CHECK(c.binom_bound == 1120);
  CHECK_THROWS_AS(low_weight_count_bound(8, 5), InputError);
}

TEST_CASE("beta_for_alpha") {
  CHECK(low_weight_growth(0.05) == doctest::Approx(1.2642).epsilon(1e-4));
  CHECK(low_weight_growth(0.06) == doctest::Approx(1.3105).epsilon(1e-4));
  CHECK(beta_for_alpha(1.3, Rational(1, 100)) == Rational(1, 20));
  const auto two = beta_for_alpha(2.0, Rational(1, 100));
  REQUIRE(two.has_value());
  CHECK(*two >= Rational(17, 100));
  CHECK_FALSE(beta_for_alpha(1.0001, Rational(1, 100)).has_value());
  CHECK_THROWS_AS(beta_for_alpha(1.0, Rational(1, 100)), InputError);
  CHECK_THROWS_AS(beta_for_alpha(2.0, Rational(0)), InputError);
}

TEST_CASE("density_certificate") {
  const auto golden = open_source(golden_mean());
  const auto pass = density_certificate(*golden, 10, Rational(2, 5));
  CHECK(pass.pass);
  CHECK(pass.required == 4);
  CHECK(pass.achieved == 5);
  CHECK(word_sum(pass.witness) >= 4);
  const auto fail = density_certificate(*golden, 10, Rational(3, 5));
  CHECK_FALSE(fail.pass);
  CHECK(fail.achieved == 5);
  const auto full = density_certificate(*open_source(full_shift(2)), 9, Rational(1));
  CHECK(full.pass);
  CHECK(full.witness == Word(9, 1));
}

TEST_CASE("analyze and report rendering") {
  AnalysisOptions options;
  options.alpha = Rational(1, 2);
  options.beta = Rational(2, 5);
  const auto report = analyze(*open_source(golden_mean()), 8, options);
  CHECK(report.subadditive);
  CHECK(report.alpha_upper == Rational(1, 2));
  CHECK(report.best_steady.alpha == Rational(1, 2));
  CHECK(report.steady_at_alpha == w("10101010"));
  REQUIRE(report.certificate.has_value());
  CHECK(report.certificate->pass);
  CHECK_FALSE(report.approximation);
  const auto csv = rows_csv(report.rows);
  CHECK(csv.rfind("n,s_n,s_n_over_n,s_n_over_n_decimal\n1,1,1,1.000000\n2,1,1/2,0.500000\n", 0) == 0);
  const auto summary = summary_json(report, 2);
  CHECK(summary["best_steady_alpha"] == "1/2");
  CHECK(summary["witness"] == "10101010");

  const auto prop3 = analyze(*open_source(builtin_spec("prop3:4")), 10);
  CHECK(prop3.approximation);
  CHECK(summary_json(prop3, 2)["approximation"] == true);
}

TEST_CASE("property: steady word certificates are exact") {
  std::mt19937 rng(kSeed);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<Word> words;
    for (int i = 0; i < 1 + trial % 12; ++i) words.push_back(random_word(rng, 2, n));
    const auto t = trie_of(2, n, words);
    const auto best = max_steady_alpha(t);
    CHECK(best.alpha == naive_steady(t));
    CHECK(min_prefix_density(best.witness) == best.alpha);
    const auto again = steady_word(t, best.alpha);
    REQUIRE(again.has_value());
    CHECK(*again == best.witness);
    for (const Rational alpha : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
      const auto found = steady_word(t, alpha);
      if (found) CHECK(min_prefix_density(*found) >= alpha);
      CHECK(found.has_value() == (alpha <= best.alpha));
    }
  }
}

TEST_CASE("property: max-sum sequence is subadditive on winning tries") {
  for (const auto* name : {"golden", "sft:00", "full:2", "full:3", "gap:n", "gap:3", "sft:011"}) {
    CHECK(is_subadditive(alpha_table(*open_source(builtin_spec(name)), 14)));
  }
}

TEST_CASE("property: splitting inequality on random decompositions") {
  std::mt19937 rng(kSeed + 1);
  std::uniform_int_distribution<std::size_t> len(1, 6);
  const Rational alpha(1, 2), eps(1, 10);
  const std::size_t m = 6;
  int long_words = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Word whole;
    Rational heaviest(0);
    std::size_t pieces = 2 + trial % 40;
    for (std::size_t i = 0; i < pieces; ++i) {
      Word piece;
      do piece = random_word(rng, 2, len(rng));
      while (density(piece) >= alpha - eps);
      heaviest = std::max(heaviest, density(piece));
      whole.insert(whole.end(), piece.begin(), piece.end());
    }
    const Word tail = random_word(rng, 2, len(rng) % (m + 1));
    // Pieces of density < alpha - eps combine below alpha - eps.
    CHECK(density(whole) <= heaviest);
    whole.insert(whole.end(), tail.begin(), tail.end());
    // A short tail moves the density by at most |tail| / |w|.
    if (Rational(static_cast<std::int64_t>(whole.size())) * eps >= Rational(static_cast<std::int64_t>(2 * m))) {
      ++long_words;
      CHECK(density(whole) < alpha - eps / 2);
    }
  }
  CHECK(long_words > 100);
}

TEST_CASE("property: low-weight bounds are ordered") {
  for (std::size_t n = 1; n <= 24; ++n) {
    for (std::size_t k = 0; 2 * k <= n; ++k) {
      const auto b = low_weight_count_bound(n, k);
      CHECK(b.exact <= b.binom_bound);
      CHECK(static_cast<double>(b.binom_bound) <= b.analytic_bound * (1 + 1e-12));
    }
  }
}

TEST_CASE("property: density transfer from the empirical growth rate") {
  for (const auto* name : {"golden", "full:2", "sft:00", "gap:3"}) {
    const auto source = open_source(builtin_spec(name));
    for (std::size_t n : {8u, 12u}) {
      const auto bw = binarize(winning_trie(source->level(n)));
      const double alpha = std::pow(static_cast<double>(bw.count()), 1.0 / static_cast<double>(n));
      if (alpha <= 1) continue;
      const auto beta = beta_for_alpha(alpha, Rational(1, 100));
      if (!beta) continue;
      CHECK(density_certificate(*source, n, *beta).pass);
    }
  }
}
