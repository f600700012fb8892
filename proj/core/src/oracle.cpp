#include "wshift/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "wshift/errors.hpp"

namespace wshift {

namespace {

std::size_t first_difference(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == b[i]) ++i;
  return i;
}

/// All index words v <= z in lexicographic order.
std::vector<Word> index_words(const BranchingStructure& z) {
  std::vector<Word> out;
  Word v(z.size(), 0);
  while (true) {
    out.push_back(v);
    std::size_t i = z.size();
    while (i > 0 && v[i - 1] == z[i - 1]) {
      v[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

class TreeSearch {
 public:
  TreeSearch(std::vector<Word> words, const BranchingStructure& z, const OracleBudget& budget)
      : words_(std::move(words)), indices_(index_words(z)), budget_(budget), assigned_(indices_.size()) {
    const auto n = z.size();
    // For each leaf, the earlier sibling whose symbol must be smaller at a
    // branching position: v with v_p decremented when v is the first leaf
    // of its branch (all entries after p are zero).
    ordered_after_.resize(indices_.size());
    for (std::size_t j = 0; j < indices_.size(); ++j) {
      const auto& v = indices_[j];
      std::size_t p = n;
      while (p > 0 && v[p - 1] == 0) --p;
      if (p == 0) continue;
      --p;
      Word u = v;
      --u[p];
      const auto it = std::lower_bound(indices_.begin(), indices_.begin() + static_cast<std::ptrdiff_t>(j), u);
      ordered_after_[j] = {static_cast<std::size_t>(it - indices_.begin()), p};
    }
  }

  bool run() { return assign(0); }

 private:
  struct Ordering {
    std::size_t leaf = 0;
    std::size_t position = static_cast<std::size_t>(-1);
  };

  bool consistent(std::size_t j, const Word& candidate) const {
    const auto& order = ordered_after_[j];
    if (order.position != static_cast<std::size_t>(-1) &&
        candidate[order.position] <= words_[assigned_[order.leaf]][order.position])
      return false;
    for (std::size_t i = j; i-- > 0;) {
      const auto& other = words_[assigned_[i]];
      if (first_difference(candidate, other) != first_difference(indices_[j], indices_[i])) return false;
    }
    return true;
  }

  bool assign(std::size_t j) {
    if (j == indices_.size()) return true;
    for (std::size_t c = 0; c < words_.size(); ++c) {
      if (++steps_ > budget_.max_steps) throw BudgetExceeded("tree oracle step budget exceeded");
      if (!consistent(j, words_[c])) continue;
      assigned_[j] = c;
      if (assign(j + 1)) return true;
    }
    return false;
  }

  std::vector<Word> words_;
  std::vector<Word> indices_;
  OracleBudget budget_;
  std::vector<std::size_t> assigned_;
  std::vector<Ordering> ordered_after_;
  std::uint64_t steps_ = 0;
};

}  // namespace

bool tree_membership_oracle(const LanguageTrie& language, const BranchingStructure& z, const OracleBudget& budget) {
  if (z.size() != language.depth()) throw std::invalid_argument("tree oracle: structure length differs from depth");
  if (z.leaf_count() > budget.max_leaves)
    throw BudgetExceeded("tree oracle: " + std::to_string(z.leaf_count()) + " leaves exceed the budget of " +
                         std::to_string(budget.max_leaves));
  if (language.is_empty()) return false;
  // A branch of z_i + 1 ways needs that many distinct symbols.
  for (Symbol s : z.entries())
    if (s >= language.alphabet_size()) return false;
  TreeSearch search(language.words(), z, budget);
  return search.run();
}

OracleReport oracle_vs_winning(const LanguageTrie& language, const LanguageTrie& winning, const OracleBudget& budget) {
  if (language.depth() != winning.depth()) throw std::invalid_argument("oracle_vs_winning: depth mismatch");
  OracleReport report;
  report.n = language.depth();
  report.k = language.alphabet_size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < report.n; ++i) {
    total *= report.k;
    if (total > budget.max_structures)
      throw BudgetExceeded("oracle_vs_winning: more than " + std::to_string(budget.max_structures) + " structures");
  }

  Word z(report.n, 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    auto rest = index;
    for (std::size_t i = report.n; i-- > 0;) {
      z[i] = static_cast<Symbol>(rest % report.k);
      rest /= report.k;
    }
    const BranchingStructure structure(z);
    const bool by_oracle = tree_membership_oracle(language, structure, budget);
    const bool by_winning = winning.contains(z);
    ++report.structures;
    if (by_oracle) ++report.accepted;
    if (by_oracle != by_winning) report.mismatches.push_back({structure, by_oracle, by_winning});
  }
  return report;
}

nlohmann::json to_json(const OracleReport& report, std::size_t alphabet_size) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& m : report.mismatches)
    mismatches.push_back({{"z", format_word(m.z.view(), alphabet_size)}, {"oracle", m.oracle}, {"winning", m.winning}});
  return {{"n", report.n},
          {"k", report.k},
          {"structures", report.structures},
          {"accepted", report.accepted},
          {"mismatches", mismatches},
          {"pass", report.pass()}};
}

IndependenceSearch bruteforce_independence(const LanguageTrie& language, std::size_t max_size, std::uint64_t max_work) {
  if (language.alphabet_size() > 2) throw InputError("independence search needs a binary alphabet");
  const auto n = language.depth();
  if (n > 63) throw BudgetExceeded("independence search supports n <= 63");
  std::vector<std::uint64_t> masks;
  language.for_each_word([&](std::span<const Symbol> w) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) m |= std::uint64_t{1} << i;
    masks.push_back(m);
  });
  if (masks.empty()) return {};

  std::uint64_t work = 0;
  std::vector<char> seen;
  for (std::size_t size = std::min(max_size, n); size > 0; --size) {
    if (size >= 63 || masks.size() < (std::uint64_t{1} << size)) continue;
    // Combinations of `size` positions in lexicographic order.
    std::vector<std::size_t> positions(size);
    for (std::size_t i = 0; i < size; ++i) positions[i] = i;
    while (true) {
      work += masks.size();
      if (work > max_work) throw BudgetExceeded("independence search work budget exceeded");
      seen.assign(std::size_t{1} << size, 0);
      std::uint64_t distinct = 0;
      for (auto m : masks) {
        std::size_t pattern = 0;
        for (std::size_t i = 0; i < size; ++i) pattern |= ((m >> positions[i]) & 1u) << i;
        if (!seen[pattern]) {
          seen[pattern] = 1;
          ++distinct;
        }
      }
      if (distinct == (std::uint64_t{1} << size)) return {positions, size};

      std::size_t i = size;
      while (i > 0 && positions[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++positions[i - 1];
      for (std::size_t j = i; j < size; ++j) positions[j] = positions[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace wshift
