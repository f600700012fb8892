#pragma once

#include <functional>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "wshift/trie.hpp"
#include "wshift/word.hpp"

namespace wshift::testing {

inline constexpr std::uint32_t kSeed = 20240611;

/// Every word of length n over {0..k-1}, lexicographic.
inline std::vector<Word> all_words(std::size_t k, std::size_t n) {
  std::vector<Word> out;
  Word w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

inline std::vector<Word> filter_words(std::size_t k, std::size_t n, const std::function<bool(const Word&)>& keep) {
  std::vector<Word> out;
  for (auto& w : all_words(k, n))
    if (keep(w)) out.push_back(std::move(w));
  return out;
}

inline bool contains_factor(const Word& w, const Word& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
    if (std::equal(f.begin(), f.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) return true;
  return false;
}

inline bool golden_naive(const Word& w) { return !contains_factor(w, {1, 1}); }

inline Word random_word(std::mt19937& rng, std::size_t k, std::size_t n) {
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(k - 1));
  Word w(n);
  for (auto& s : w) s = sym(rng);
  return w;
}

inline LanguageTrie trie_of(std::size_t k, std::size_t n, std::vector<Word> words) {
  return LanguageTrie::from_words(make_store(k), n, std::move(words));
}

inline LanguageTrie trie_of(const StorePtr& store, std::size_t n, std::vector<Word> words) {
  return LanguageTrie::from_words(store, n, std::move(words));
}

inline Word w(std::string_view text, std::size_t k = 2) { return parse_word(text, k); }

}  // namespace wshift::testing
