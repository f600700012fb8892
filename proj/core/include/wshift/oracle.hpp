#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "wshift/trie.hpp"
#include "wshift/word.hpp"

namespace wshift {

// Brute-force checkers that work from the definitions only. Nothing here
// calls into the winning recursion.

struct OracleBudget {
  /// Cap on prod(z_i + 1), the number of tree leaves to assign.
  std::uint64_t max_leaves = 32;
  /// Cap on candidate assignments tried by one search.
  std::uint64_t max_steps = 100'000'000;
  /// Cap on k^n structures enumerated by oracle_vs_winning.
  std::uint64_t max_structures = 243;
};

/// Searches for an assignment v -> x^v of words of L to every index word
/// v <= z such that, for all v != v', x^v and x^v' first differ exactly where
/// v and v' first differ. Throws BudgetExceeded past the budget.
///
/// Sibling subtrees may be permuted without affecting the first-difference
/// condition, so the search only tries assignments in which the symbol at a
/// branching position increases with the branch index.
bool tree_membership_oracle(const LanguageTrie& language, const BranchingStructure& z,
                            const OracleBudget& budget = {});

struct OracleMismatch {
  BranchingStructure z;
  bool oracle = false;
  bool winning = false;
};

struct OracleReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t structures = 0;
  std::uint64_t accepted = 0;
  std::vector<OracleMismatch> mismatches;

  bool pass() const noexcept { return mismatches.empty(); }
};

/// Runs the oracle on every z in {0..k-1}^n and compares with membership in
/// `winning` (a trie of the same depth over the same alphabet).
OracleReport oracle_vs_winning(const LanguageTrie& language, const LanguageTrie& winning,
                               const OracleBudget& budget = {});
nlohmann::json to_json(const OracleReport& report, std::size_t alphabet_size);

struct IndependenceSearch {
  std::vector<std::size_t> positions;
  std::size_t size = 0;
};

/// Largest N within [0, n) with |{w|_N : w in L}| = 2^|N|, at most
/// `max_size` positions; lexicographically least N among the largest.
/// Binary alphabets only.
IndependenceSearch bruteforce_independence(const LanguageTrie& language, std::size_t max_size,
                                           std::uint64_t max_work = 2'000'000'000);

}  // namespace wshift
