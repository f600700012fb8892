#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wshift/automaton.hpp"
#include "wshift/errors.hpp"
#include "wshift/gallery.hpp"
#include "wshift/language.hpp"

using namespace wshift;
using namespace wshift::testing;

namespace {

/// log2 of the spectral radius of the automaton's transition graph, by
/// power iteration with A + I (aperiodic, same leading eigenvector).
double spectral_entropy(const FollowerAutomaton& aut) {
  const auto states = aut.state_count();
  std::vector<double> v(states, 1.0), next(states);
  double growth = 1;
  for (int iter = 0; iter < 2000; ++iter) {
    next = v;
    for (std::size_t s = 0; s < states; ++s)
      for (Symbol a = 0; a < aut.alphabet_size(); ++a)
        if (const auto t = aut.next(s, a); t != FollowerAutomaton::kNoState) next[s] += v[t];
    growth = *std::max_element(next.begin(), next.end());
    for (std::size_t s = 0; s < states; ++s) v[s] = next[s] / growth;
  }
  return std::log2(growth - 1);
}

}  // namespace

TEST_CASE("language_trie") {
  const auto golden = compile(golden_mean());
  const auto l3 = language_trie(golden, 3);
  CHECK(l3.words() == std::vector<Word>{w("000"), w("001"), w("010"), w("100"), w("101")});
  CHECK(language_trie(compile(full_shift(2)), 4).count() == 16);
  CHECK(language_trie(compile_sft(2, {{1, 0}, {1, 1}}), 5).words() == std::vector<Word>{w("00000")});

  const auto l0 = language_trie(golden, 0);
  CHECK(l0.count() == 1);
  CHECK(l0.contains(Word{}));
}

TEST_CASE("count") {
  const auto golden = compile(golden_mean());
  const std::vector<std::uint64_t> expected{2, 3, 5, 8, 13};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto naive = filter_words(2, n, golden_naive);
    CHECK(naive.size() == expected[n - 1]);
    CHECK(language_trie(golden, n).count() == expected[n - 1]);
  }
  CHECK(language_trie(compile(full_shift(3)), 3).count() == 27);
  CHECK(LanguageTrie::empty(make_store(2), 4).count() == 0);
  CHECK(LanguageTrie::empty(make_store(2), 4).is_empty());
}

TEST_CASE("decompose") {
  const auto l3 = language_trie(compile(golden_mean()), 3);
  CHECK(l3.decompose(1).words() == std::vector<Word>{w("00"), w("01")});
  CHECK(l3.decompose(0).words() == std::vector<Word>{w("00"), w("01"), w("10")});
  const auto full = compile(full_shift(2));
  CHECK(language_trie(full, 2).decompose(0).words() == std::vector<Word>{w("0"), w("1")});
  CHECK_THROWS(language_trie(full, 0).decompose(0));
}

TEST_CASE("entropy_estimate") {
  CHECK(entropy_estimate(compile(full_shift(2)), 7) == doctest::Approx(1.0));
  CHECK(entropy_estimate(compile(golden_mean()), 8) == doctest::Approx(std::log2(55.0) / 8));
  const double e24 = entropy_estimate(compile(golden_mean()), 24);
  CHECK(e24 == doctest::Approx(std::log2(121393.0) / 24));
  CHECK(e24 == doctest::Approx(0.7037).epsilon(1e-4));
  CHECK(e24 >= std::log2((1 + std::sqrt(5.0)) / 2));
  CHECK_THROWS_AS(entropy_estimate(compile(golden_mean()), 0), InputError);
}

TEST_CASE("factor_closed_check") {
  CHECK(factor_closed_check(compile(golden_mean()), 6));
  CHECK(factor_closed_check(compile(full_shift(2)), 4));
  const auto store = make_store(2);
  const auto level2 = trie_of(store, 2, {w("01"), w("11")});
  const auto level1 = trie_of(store, 1, {w("1")});
  CHECK_FALSE(factor_closed_check(level2, level1));
  CHECK(factor_closed_check(level2, trie_of(store, 1, {w("0"), w("1")})));
}

TEST_CASE("serialize") {
  const auto l2 = language_trie(compile(golden_mean()), 2);
  CHECK(serialize(l2) == "00\n01\n10\n");
  CHECK(deserialize("00\n01\n10\n", 2, 2) == l2);
  CHECK_THROWS_AS(deserialize("012\n", 3, 2), InputError);
  CHECK_THROWS_AS(deserialize("02\n", 2, 2), InputError);
  CHECK(serialize(language_trie(compile(golden_mean()), 0)) == "\n");
  CHECK(deserialize("\n", 2, 0).count() == 1);
  CHECK(deserialize("", 2, 3).is_empty());
  const auto wide = trie_of(12, 2, {Word{11, 0}, Word{3, 4}});
  CHECK(serialize(wide) == "3,4\n11,0\n");
  CHECK(deserialize(serialize(wide), 12, 2).words() == wide.words());
}

TEST_CASE("set operations") {
  const auto store = make_store(2);
  const auto a = trie_of(store, 2, {w("00"), w("01")});
  const auto b = trie_of(store, 2, {w("01"), w("11")});
  CHECK(trie_union(a, b).count() == 3);
  CHECK(is_subset(a, trie_union(a, b)));
  CHECK_FALSE(is_subset(a, b));
  CHECK(truncate(b, 1).words() == std::vector<Word>{w("0"), w("1")});
  const std::vector<std::size_t> second{1};
  CHECK(project(a, second, make_store(2)).words() == std::vector<Word>{w("0"), w("1")});
  const auto ternary = trie_of(3, 2, {Word{0, 2}, Word{1, 1}});
  CHECK(restrict_to_store(ternary, make_store(2)).words() == std::vector<Word>{w("11")});
}

TEST_CASE("counts_csv") {
  const AutomatonSource golden(compile(golden_mean()));
  CHECK(counts_csv(golden, 1, 2) == "n,count,log2_count_over_n\n1,2,1.000000\n2,3,0.792481\n");
}

TEST_CASE("predicate source matches a brute-force filter") {
  const GapParams params = GapParams::identity();
  const PredicateSource gap(2, [&](std::span<const Symbol> word) { return gap_member(params, word); });
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto naive = filter_words(2, n, [&](const Word& word) { return gap_member(params, word); });
    CHECK(gap.level(n).words() == naive);
  }
}

TEST_CASE("node budget") {
  const auto tiny = make_store(2, 4);
  CHECK_THROWS_AS(language_trie(compile(full_shift(2)), 6, tiny), BudgetExceeded);
}

TEST_CASE("property: subadditivity of level counts") {
  std::mt19937 rng(kSeed);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Word> forbidden{random_word(rng, 2, 2 + trial % 3), random_word(rng, 2, 3)};
    try {
      const auto aut = compile_sft(2, forbidden);
      for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t n = 1; n <= 6; ++n)
          CHECK(language_trie(aut, m + n).count() <= language_trie(aut, m).count() * language_trie(aut, n).count());
    } catch (const InputError&) {
    }
  }
}

TEST_CASE("property: entropy estimates stay above the spectral entropy") {
  const auto golden = compile(golden_mean());
  const double h = spectral_entropy(golden);
  CHECK(h == doctest::Approx(std::log2((1 + std::sqrt(5.0)) / 2)));
  for (std::size_t n = 1; n <= 24; ++n) CHECK(entropy_estimate(golden, n) >= h - 1e-12);

  std::mt19937 rng(kSeed + 1);
  for (int trial = 0; trial < 40; ++trial) {
    try {
      const auto aut = compile_sft(3, {random_word(rng, 3, 2), random_word(rng, 3, 2), random_word(rng, 3, 3)});
      const double spectral = spectral_entropy(aut);
      for (std::size_t n = 1; n <= 10; ++n) CHECK(entropy_estimate(aut, n) >= spectral - 1e-6);
    } catch (const InputError&) {
    }
  }
}

TEST_CASE("property: decompose partitions each level") {
  std::mt19937 rng(kSeed + 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 3, n = 1 + trial % 5;
    std::vector<Word> words;
    for (int i = 0; i < 12; ++i) words.push_back(random_word(rng, k, n));
    const auto t = trie_of(k, n, words);
    std::uint64_t total = 0;
    for (Symbol a = 0; a < k; ++a) total += t.decompose(a).count();
    CHECK(total == t.count());
  }
}

TEST_CASE("property: serialization round trip and sharing invisibility") {
  std::mt19937 rng(kSeed + 3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + trial % 10, n = trial % 6;
    std::vector<Word> words;
    for (int i = 0; i < 20; ++i) words.push_back(random_word(rng, k, n));
    const auto shared = make_store(k);
    trie_of(shared, n, {words.begin(), words.begin() + 10});
    const auto t = trie_of(shared, n, words);
    const auto text = serialize(t);
    CHECK(deserialize(text, k, n, shared) == t);
    CHECK(serialize(trie_of(k, n, words)) == text);
  }
}
