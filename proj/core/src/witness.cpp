#include "wshift/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "wshift/errors.hpp"

namespace wshift {

TreeWitness extract_tree(WinningEngine& engine, const LanguageTrie& language, const BranchingStructure& z) {
  if (language.store() != engine.store()) throw std::invalid_argument("extract_tree: engine store mismatch");
  const auto k = language.alphabet_size();
  if (z.size() != language.depth() || !z.fits(Alphabet(k)) ||
      !engine.winning_trie(language).contains(z))
    throw NotWinning("structure " + format_word(z.view(), k) + " is not winning");

  const auto& store = *language.store();
  TreeWitness tree{language.depth(), z, {}};
  Word index, word;
  std::function<void(NodeId)> grow = [&](NodeId node) {
    const auto position = word.size();
    if (position == z.size()) {
      tree.leaves.push_back({index, word});
      return;
    }
    auto symbols = engine.winnable_symbols(node, z.view().subspan(position + 1));
    if (symbols.size() <= z[position]) throw std::logic_error("extract_tree: winning set is inconsistent");
    symbols.resize(std::size_t{z[position]} + 1);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      index.push_back(static_cast<Symbol>(i));
      word.push_back(symbols[i]);
      grow(store.child(node, symbols[i]));
      word.pop_back();
      index.pop_back();
    }
  };
  grow(language.root());
  return tree;
}

TreeWitness extract_tree(const LanguageTrie& language, const BranchingStructure& z) {
  WinningEngine engine(language.store());
  return extract_tree(engine, language, z);
}

namespace {

std::size_t first_difference(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == b[i]) ++i;
  return i;
}

bool verify_local(const TreeWitness& tree) {
  // x[0, i] must be a function of v[0, i], and siblings must get distinct
  // symbols at the branching position.
  const auto n = tree.n;
  for (std::size_t i = 0; i < n; ++i) {
    std::map<Word, Word> prefix_of;                  // v[0..i] -> x[0..i]
    std::map<Word, std::set<Symbol>> sibling_symbols;  // v[0..i) -> {x_i}
    std::map<Word, std::size_t> sibling_count;
    for (const auto& leaf : tree.leaves) {
      Word v(leaf.index.begin(), leaf.index.begin() + static_cast<std::ptrdiff_t>(i + 1));
      Word x(leaf.word.begin(), leaf.word.begin() + static_cast<std::ptrdiff_t>(i + 1));
      auto [it, inserted] = prefix_of.emplace(v, x);
      if (!inserted) {
        if (it->second != x) return false;
        continue;
      }
      v.pop_back();
      sibling_symbols[v].insert(x.back());
      ++sibling_count[v];
    }
    for (const auto& [parent, symbols] : sibling_symbols)
      if (symbols.size() != sibling_count[parent]) return false;
  }
  return true;
}

}  // namespace

bool verify_tree(const TreeWitness& tree, const LanguageTrie& language) {
  const auto& z = tree.structure;
  if (tree.n != language.depth() || z.size() != tree.n) return false;
  std::uint64_t expected = 0;
  try {
    expected = z.leaf_count();
  } catch (const BudgetExceeded&) {
    return false;
  }
  if (tree.leaves.size() != expected) return false;

  std::set<Word> indices;
  for (const auto& leaf : tree.leaves) {
    if (leaf.index.size() != tree.n || leaf.word.size() != tree.n) return false;
    if (!is_dominated_by(leaf.index, z.entries())) return false;
    if (!language.contains(leaf.word)) return false;
    if (!indices.insert(leaf.index).second) return false;
  }

  const std::uint64_t leaves = tree.leaves.size();
  if (leaves * (leaves - 1) / 2 > kPairwiseLimit) return verify_local(tree);
  for (std::size_t i = 0; i < tree.leaves.size(); ++i)
    for (std::size_t j = i + 1; j < tree.leaves.size(); ++j)
      if (first_difference(tree.leaves[i].word, tree.leaves[j].word) !=
          first_difference(tree.leaves[i].index, tree.leaves[j].index))
        return false;
  return true;
}

std::string format_tree(const TreeWitness& tree, std::size_t alphabet_size) {
  std::string out;
  for (const auto& leaf : tree.leaves)
    out += format_word(leaf.index, alphabet_size) + " -> " + format_word(leaf.word, alphabet_size) + "\n";
  return out;
}

std::uint64_t projection_count(const LanguageTrie& language, std::span<const std::size_t> positions) {
  return project(language, positions, make_store(language.alphabet_size())).count();
}

bool verify_independence(const LanguageTrie& language, std::span<const std::size_t> positions) {
  if (language.alphabet_size() > 2) throw InputError("independence sets are defined for binary alphabets");
  if (positions.size() >= 64) throw BudgetExceeded("independence check supports fewer than 64 positions");
  return projection_count(language, positions) == (std::uint64_t{1} << positions.size());
}

IndependenceSet independence_from_structure(WinningEngine& engine, const BranchingStructure& z,
                                            const LanguageTrie& language) {
  if (language.alphabet_size() != 2) throw InputError("independence sets are defined for binary alphabets");
  if (language.store() != engine.store()) throw std::invalid_argument("independence_from_structure: store mismatch");
  if (!z.is_binary() || z.size() != language.depth() || !engine.winning_trie(language).contains(z))
    throw NotWinning("structure " + format_word(z.view(), 2) + " is not a binary winning structure");
  IndependenceSet set;
  set.n = language.depth();
  set.positions = z.support();
  set.projection_count = projection_count(language, set.positions);
  set.verified = set.projection_count == (std::uint64_t{1} << set.positions.size());
  if (!set.verified) throw std::logic_error("support of a winning structure failed independence verification");
  return set;
}

IndependenceSet independence_from_structure(const BranchingStructure& z, const LanguageTrie& language) {
  WinningEngine engine(language.store());
  return independence_from_structure(engine, z, language);
}

nlohmann::json to_json(const IndependenceSet& set) {
  return {{"n", set.n},
          {"positions", set.positions},
          {"projection_count", set.projection_count},
          {"verified", set.verified}};
}

}  // namespace wshift
