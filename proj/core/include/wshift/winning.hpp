#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "wshift/language.hpp"

namespace wshift {

/// The finite winning level W(L): branching structures of the trees that
/// fit in L, stored as a trie over the structure alphabet {0..k-1} in the
/// same node store as L.
class WinningTrie {
 public:
  explicit WinningTrie(LanguageTrie structures) : structures_(std::move(structures)) {}

  const LanguageTrie& trie() const noexcept { return structures_; }
  operator const LanguageTrie&() const noexcept { return structures_; }

  std::uint64_t count() const noexcept { return structures_.count(); }
  std::size_t depth() const noexcept { return structures_.depth(); }
  bool contains(std::span<const Symbol> z) const noexcept { return structures_.contains(z); }
  bool contains(const BranchingStructure& z) const noexcept { return structures_.contains(z.view()); }

 private:
  LanguageTrie structures_;
};

/// Computes W bottom-up over canonical subtries:
///   W({e}) = {e},  W(empty) = empty,
///   W(L) = { i.w : #{a : w in W(L_a)} > i }.
/// Results are memoized per node id, so distinct prefixes with the same
/// follower language are solved once, and the engine can be reused across
/// levels drawn from the same store.
class WinningEngine {
 public:
  explicit WinningEngine(StorePtr store);

  const StorePtr& store() const noexcept { return store_; }

  WinningTrie winning_trie(const LanguageTrie& language);
  NodeId winning_node(NodeId language_node);

  /// Structures z with tail in W(L_a) for exactly the returned symbols a.
  std::vector<Symbol> winnable_symbols(NodeId language_node, std::span<const Symbol> tail);

 private:
  NodeId at_least(std::vector<NodeId> nodes, std::size_t threshold);

  StorePtr store_;
  std::unordered_map<NodeId, NodeId> memo_;
  std::map<std::pair<std::size_t, std::vector<NodeId>>, NodeId> threshold_memo_;
};

WinningTrie winning_trie(const LanguageTrie& language);

struct CardinalityReport {
  std::size_t n = 0;
  std::uint64_t lang_count = 0;
  std::uint64_t winning_count = 0;
  bool pass = false;
};

/// Word-count preservation: |W(L)| = |L|.
CardinalityReport cardinality_check(const LanguageTrie& language, const LanguageTrie& winning);
nlohmann::json to_json(const CardinalityReport& report);
std::string to_csv(const CardinalityReport& report);

/// Closure under pointwise <=, checked as closure under decrementing one
/// position: child(a) must be a subset of child(a-1) at every node.
bool hereditary_check(const LanguageTrie& t);

/// Words with every entry <= 1, as a trie in a fresh binary store.
LanguageTrie binary_restrict(const LanguageTrie& t);

/// Support patterns {x : x_i != 0 iff y_i != 0, y in t} in a fresh binary store.
LanguageTrie binarize(const LanguageTrie& t);

struct PowerCountReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t count = 0;
  std::uint64_t binarized_count = 0;
  /// binarized_count^k, saturated at 2^64-1.
  std::uint64_t bound = 0;
  bool pass = false;
};

/// |T| <= |binarize(T)|^k for a hereditary T over {0..k-1}. Throws
/// std::invalid_argument when T is not hereditary.
PowerCountReport power_count_check(const LanguageTrie& t);

}  // namespace wshift
