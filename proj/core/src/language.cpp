#include "wshift/language.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "wshift/errors.hpp"

namespace wshift {

namespace {

constexpr NodeId kEmpty = NodeStore::kEmpty;
constexpr NodeId kLeaf = NodeStore::kLeaf;

std::uint64_t pair_key(NodeId a, NodeId b) { return (std::uint64_t{a} << 32) | b; }

void require_same_store(const LanguageTrie& a, const LanguageTrie& b, const char* op) {
  if (a.store() != b.store()) throw std::invalid_argument(std::string(op) + ": operands live in different stores");
  if (a.depth() != b.depth()) throw std::invalid_argument(std::string(op) + ": depth mismatch");
}

}  // namespace

LanguageTrie language_trie(const FollowerAutomaton& automaton, std::size_t n, StorePtr store) {
  const auto k = automaton.alphabet_size();
  if (!store) store = make_store(k);
  if (store->alphabet_size() != k) throw std::invalid_argument("language_trie: store alphabet mismatch");

  const auto states = automaton.state_count();
  std::vector<NodeId> below(states, kLeaf);
  std::vector<NodeId> current(states);
  std::vector<NodeId> children(k);
  for (std::size_t remaining = 1; remaining <= n; ++remaining) {
    for (std::size_t s = 0; s < states; ++s) {
      for (std::size_t a = 0; a < k; ++a) {
        const auto t = automaton.next(s, static_cast<Symbol>(a));
        children[a] = t == FollowerAutomaton::kNoState ? kEmpty : below[t];
      }
      current[s] = store->make(children);
    }
    std::swap(below, current);
  }
  return LanguageTrie(std::move(store), below[automaton.start()], n);
}

LanguageTrie AutomatonSource::level(std::size_t n, const StorePtr& store) const {
  return language_trie(automaton_, n, store);
}

LanguageTrie PredicateSource::level(std::size_t n, const StorePtr& store) const {
  if (store->alphabet_size() != k_) throw std::invalid_argument("PredicateSource: store alphabet mismatch");
  Word prefix;
  std::function<NodeId()> grow = [&]() -> NodeId {
    if (prefix.size() == n) return kLeaf;
    std::vector<NodeId> children(k_, kEmpty);
    for (std::size_t a = 0; a < k_; ++a) {
      prefix.push_back(static_cast<Symbol>(a));
      if (rule_(prefix)) children[a] = grow();
      prefix.pop_back();
    }
    return store->make(children);
  };
  const NodeId root = rule_(prefix) ? grow() : kEmpty;
  return LanguageTrie(store, root, n);
}

double entropy_estimate(const LanguageSource& source, std::size_t n) {
  if (n == 0) throw InputError("entropy estimate needs n >= 1");
  const auto count = source.level(n).count();
  if (count == 0) throw InputError("entropy estimate of an empty language");
  return std::log2(static_cast<double>(count)) / static_cast<double>(n);
}

double entropy_estimate(const FollowerAutomaton& automaton, std::size_t n) {
  return entropy_estimate(AutomatonSource(automaton), n);
}

LanguageTrie trie_union(const LanguageTrie& a, const LanguageTrie& b) {
  require_same_store(a, b, "trie_union");
  auto& store = *a.store();
  const auto k = store.alphabet_size();
  std::unordered_map<std::uint64_t, NodeId> memo;
  std::function<NodeId(NodeId, NodeId)> merge = [&](NodeId x, NodeId y) -> NodeId {
    if (x == kEmpty) return y;
    if (y == kEmpty || x == y) return x;
    if (x > y) std::swap(x, y);
    if (auto it = memo.find(pair_key(x, y)); it != memo.end()) return it->second;
    std::vector<NodeId> children(k);
    for (std::size_t s = 0; s < k; ++s)
      children[s] = merge(store.child(x, static_cast<Symbol>(s)), store.child(y, static_cast<Symbol>(s)));
    const auto id = store.make(children);
    memo.emplace(pair_key(x, y), id);
    return id;
  };
  return LanguageTrie(a.store(), merge(a.root(), b.root()), a.depth());
}

bool is_subset(const LanguageTrie& a, const LanguageTrie& b) {
  require_same_store(a, b, "is_subset");
  const auto& store = *a.store();
  const auto k = store.alphabet_size();
  std::unordered_map<std::uint64_t, bool> memo;
  std::function<bool(NodeId, NodeId)> subset = [&](NodeId x, NodeId y) -> bool {
    if (x == kEmpty || x == y) return true;
    if (y == kEmpty) return false;
    if (store.count(x) > store.count(y)) return false;
    if (auto it = memo.find(pair_key(x, y)); it != memo.end()) return it->second;
    bool result = true;
    for (std::size_t s = 0; s < k && result; ++s)
      result = subset(store.child(x, static_cast<Symbol>(s)), store.child(y, static_cast<Symbol>(s)));
    memo.emplace(pair_key(x, y), result);
    return result;
  };
  return subset(a.root(), b.root());
}

LanguageTrie truncate(const LanguageTrie& t, std::size_t depth) {
  if (depth > t.depth()) throw std::invalid_argument("truncate: depth exceeds trie depth");
  auto& store = *t.store();
  const auto k = store.alphabet_size();
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId, std::size_t)> cut = [&](NodeId node, std::size_t remaining) -> NodeId {
    if (node == kEmpty) return kEmpty;
    if (remaining == 0) return kLeaf;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    std::vector<NodeId> children(k);
    for (std::size_t s = 0; s < k; ++s) children[s] = cut(store.child(node, static_cast<Symbol>(s)), remaining - 1);
    const auto id = store.make(children);
    memo.emplace(node, id);
    return id;
  };
  return LanguageTrie(t.store(), cut(t.root(), depth), depth);
}

LanguageTrie restrict_to_store(const LanguageTrie& t, const StorePtr& target) {
  const auto& source = *t.store();
  const auto k_source = source.alphabet_size();
  const auto k_target = target->alphabet_size();
  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> copy = [&](NodeId node) -> NodeId {
    if (node == kEmpty || node == kLeaf) return node;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    std::vector<NodeId> children(k_target, kEmpty);
    for (std::size_t s = 0; s < std::min(k_source, k_target); ++s)
      children[s] = copy(source.child(node, static_cast<Symbol>(s)));
    const auto id = target->make(children);
    memo.emplace(node, id);
    return id;
  };
  return LanguageTrie(target, copy(t.root()), t.depth());
}

LanguageTrie project(const LanguageTrie& t, std::span<const std::size_t> positions, const StorePtr& target) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= t.depth()) throw InputError("projection position out of range");
    if (i > 0 && positions[i] <= positions[i - 1]) throw InputError("projection positions must be increasing");
  }
  const auto& source = *t.store();
  const auto k = source.alphabet_size();
  if (target->alphabet_size() < k) throw std::invalid_argument("project: target alphabet too small");
  std::vector<bool> kept(t.depth(), false);
  for (auto p : positions) kept[p] = true;

  // Result for a source node is a set of tries in the target store; at a
  // dropped position the children are unioned, at a kept one they branch.
  auto target_union = [&](NodeId x, NodeId y, std::size_t depth) {
    return trie_union(LanguageTrie(target, x, depth), LanguageTrie(target, y, depth)).root();
  };
  std::vector<std::size_t> kept_after(t.depth() + 1, 0);
  for (std::size_t i = t.depth(); i-- > 0;) kept_after[i] = kept_after[i + 1] + (kept[i] ? 1 : 0);

  std::unordered_map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId, std::size_t)> go = [&](NodeId node, std::size_t position) -> NodeId {
    if (node == kEmpty) return kEmpty;
    if (position == t.depth() || kept_after[position] == 0) return kLeaf;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    NodeId result;
    if (kept[position]) {
      std::vector<NodeId> children(target->alphabet_size(), kEmpty);
      for (std::size_t s = 0; s < k; ++s) children[s] = go(source.child(node, static_cast<Symbol>(s)), position + 1);
      result = target->make(children);
    } else {
      result = kEmpty;
      for (std::size_t s = 0; s < k; ++s)
        result = target_union(result, go(source.child(node, static_cast<Symbol>(s)), position + 1),
                              kept_after[position + 1]);
    }
    memo.emplace(node, result);
    return result;
  };
  return LanguageTrie(target, go(t.root(), 0), positions.size());
}

bool factor_closed_check(const LanguageTrie& level_n, const LanguageTrie& level_n_minus_1) {
  if (level_n.store() != level_n_minus_1.store()) throw std::invalid_argument("factor_closed_check: store mismatch");
  if (level_n.depth() != level_n_minus_1.depth() + 1) throw std::invalid_argument("factor_closed_check: depth mismatch");
  if (!is_subset(truncate(level_n, level_n_minus_1.depth()), level_n_minus_1)) return false;
  for (std::size_t a = 0; a < level_n.alphabet_size(); ++a)
    if (!is_subset(level_n.decompose(static_cast<Symbol>(a)), level_n_minus_1)) return false;
  return true;
}

bool factor_closed_check(const FollowerAutomaton& automaton, std::size_t n) {
  if (n == 0) return true;
  auto store = make_store(automaton.alphabet_size());
  return factor_closed_check(language_trie(automaton, n, store), language_trie(automaton, n - 1, store));
}

std::string serialize(const LanguageTrie& t) {
  std::string out;
  const auto k = t.alphabet_size();
  t.for_each_word([&](std::span<const Symbol> w) {
    out += format_word(w, k);
    out.push_back('\n');
  });
  return out;
}

LanguageTrie deserialize(std::string_view text, std::size_t alphabet_size, std::size_t n, StorePtr store) {
  if (!store) store = make_store(alphabet_size);
  if (store->alphabet_size() != alphabet_size) throw std::invalid_argument("deserialize: store alphabet mismatch");
  std::vector<Word> words;
  std::size_t start = 0;
  std::size_t line_number = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;
    Word w;
    try {
      w = parse_word(line, alphabet_size);
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_number) + ": " + e.what());
    }
    if (w.size() != n)
      throw InputError("line " + std::to_string(line_number) + ": word has length " + std::to_string(w.size()) +
                       ", expected " + std::to_string(n));
    words.push_back(std::move(w));
    start = end + 1;
  }
  return LanguageTrie::from_words(std::move(store), n, std::move(words));
}

std::string counts_csv(const LanguageSource& source, std::size_t from, std::size_t to) {
  std::ostringstream out;
  out << "n,count,log2_count_over_n\n";
  auto store = make_store(source.alphabet_size());
  for (std::size_t n = from; n <= to; ++n) {
    const auto count = source.level(n, store).count();
    out << n << ',' << count << ',';
    if (n > 0 && count > 0) {
      char buffer[32];
      std::snprintf(buffer, sizeof buffer, "%.6f", std::log2(static_cast<double>(count)) / static_cast<double>(n));
      out << buffer;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace wshift
