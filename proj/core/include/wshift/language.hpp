#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "wshift/automaton.hpp"
#include "wshift/trie.hpp"

namespace wshift {

/// Anything that can produce the level sets L_n of a subshift.
class LanguageSource {
 public:
  virtual ~LanguageSource() = default;

  virtual std::size_t alphabet_size() const = 0;
  virtual bool member(std::span<const Symbol> w) const = 0;
  virtual LanguageTrie level(std::size_t n, const StorePtr& store) const = 0;

  /// True when level() may miss words of the true language.
  virtual bool under_approximation() const { return false; }

  LanguageTrie level(std::size_t n) const { return level(n, make_store(alphabet_size())); }
};

class AutomatonSource final : public LanguageSource {
 public:
  explicit AutomatonSource(FollowerAutomaton automaton) : automaton_(std::move(automaton)) {}

  const FollowerAutomaton& automaton() const noexcept { return automaton_; }
  std::size_t alphabet_size() const override { return automaton_.alphabet_size(); }
  bool member(std::span<const Symbol> w) const override { return automaton_.member(w); }
  LanguageTrie level(std::size_t n, const StorePtr& store) const override;
  using LanguageSource::level;

 private:
  FollowerAutomaton automaton_;
};

/// Membership rule over a prefix-closed language in which every member word
/// extends to a point. Levels are grown by prefix-checked depth-first search.
class PredicateSource final : public LanguageSource {
 public:
  using Rule = std::function<bool(std::span<const Symbol>)>;

  PredicateSource(std::size_t alphabet_size, Rule rule) : k_(alphabet_size), rule_(std::move(rule)) {}

  std::size_t alphabet_size() const override { return k_; }
  bool member(std::span<const Symbol> w) const override { return rule_(w); }
  LanguageTrie level(std::size_t n, const StorePtr& store) const override;
  using LanguageSource::level;

 private:
  std::size_t k_;
  Rule rule_;
};

/// L_n by unfolding the automaton, memoized on (state, remaining depth) so
/// states with equal follower sets share nodes.
LanguageTrie language_trie(const FollowerAutomaton& automaton, std::size_t n, StorePtr store = nullptr);

/// log2 |L_n| / n. Throws InputError for n = 0 or an empty level.
double entropy_estimate(const FollowerAutomaton& automaton, std::size_t n);
double entropy_estimate(const LanguageSource& source, std::size_t n);

/// Every length-(n-1) factor of every word of L_n lies in L_{n-1}.
bool factor_closed_check(const FollowerAutomaton& automaton, std::size_t n);
/// Same check on two explicit levels (n and n-1) sharing a store.
bool factor_closed_check(const LanguageTrie& level_n, const LanguageTrie& level_n_minus_1);

// Set operations. Both operands must live in the same store and have the
// same depth unless stated otherwise.
LanguageTrie trie_union(const LanguageTrie& a, const LanguageTrie& b);
bool is_subset(const LanguageTrie& a, const LanguageTrie& b);
/// Length-`depth` prefixes of the words of `t`.
LanguageTrie truncate(const LanguageTrie& t, std::size_t depth);
/// Copies into `target`, dropping words that use symbols outside its alphabet.
LanguageTrie restrict_to_store(const LanguageTrie& t, const StorePtr& target);
/// {w|_positions : w in t} as a trie of depth positions.size() in `target`.
/// Positions must be strictly increasing and below t.depth().
LanguageTrie project(const LanguageTrie& t, std::span<const std::size_t> positions, const StorePtr& target);

/// One word per line in text form, lexicographic by symbol value.
std::string serialize(const LanguageTrie& t);
/// Inverse of serialize. Throws InputError on malformed lines.
LanguageTrie deserialize(std::string_view text, std::size_t alphabet_size, std::size_t n, StorePtr store = nullptr);

/// CSV with columns n,count,log2_count_over_n for n in [from, to].
std::string counts_csv(const LanguageSource& source, std::size_t from, std::size_t to);

}  // namespace wshift
