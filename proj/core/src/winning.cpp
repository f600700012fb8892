#include "wshift/winning.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace wshift {

namespace {

constexpr NodeId kEmpty = NodeStore::kEmpty;
constexpr NodeId kLeaf = NodeStore::kLeaf;

}  // namespace

WinningEngine::WinningEngine(StorePtr store) : store_(std::move(store)) {
  if (!store_) throw std::invalid_argument("WinningEngine needs a store");
}

NodeId WinningEngine::winning_node(NodeId node) {
  if (node == kEmpty || node == kLeaf) return node;
  if (auto it = memo_.find(node); it != memo_.end()) return it->second;

  const auto k = store_->alphabet_size();
  std::vector<NodeId> tails(k);
  for (std::size_t a = 0; a < k; ++a) tails[a] = winning_node(store_->child(node, static_cast<Symbol>(a)));

  // Child i holds the tails winnable after more than i distinct symbols.
  std::vector<NodeId> children(k);
  for (std::size_t i = 0; i < k; ++i) children[i] = at_least(tails, i + 1);
  const auto result = store_->make(children);
  memo_.emplace(node, result);
  return result;
}

NodeId WinningEngine::at_least(std::vector<NodeId> nodes, std::size_t threshold) {
  std::erase(nodes, kEmpty);
  if (nodes.size() < threshold) return kEmpty;
  // Nodes in one call share a depth, so a leaf means depth 0 for all.
  if (nodes.front() == kLeaf) return kLeaf;
  std::sort(nodes.begin(), nodes.end());
  if (threshold == 1 && nodes.front() == nodes.back()) return nodes.front();
  if (threshold == nodes.size() && nodes.front() == nodes.back()) return nodes.front();

  auto key = std::make_pair(threshold, nodes);
  if (auto it = threshold_memo_.find(key); it != threshold_memo_.end()) return it->second;

  const auto k = store_->alphabet_size();
  std::vector<NodeId> children(k);
  std::vector<NodeId> column(nodes.size());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t j = 0; j < nodes.size(); ++j) column[j] = store_->child(nodes[j], static_cast<Symbol>(a));
    children[a] = at_least(column, threshold);
  }
  const auto result = store_->make(children);
  threshold_memo_.emplace(std::move(key), result);
  return result;
}

WinningTrie WinningEngine::winning_trie(const LanguageTrie& language) {
  if (language.store() != store_) throw std::invalid_argument("WinningEngine: language lives in another store");
  return WinningTrie(LanguageTrie(store_, winning_node(language.root()), language.depth()));
}

std::vector<Symbol> WinningEngine::winnable_symbols(NodeId node, std::span<const Symbol> tail) {
  std::vector<Symbol> out;
  if (node == kEmpty || node == kLeaf) return out;
  const auto k = store_->alphabet_size();
  for (std::size_t a = 0; a < k; ++a) {
    NodeId w = winning_node(store_->child(node, static_cast<Symbol>(a)));
    for (Symbol s : tail) {
      if (w == kEmpty || s >= k) {
        w = kEmpty;
        break;
      }
      w = store_->child(w, s);
    }
    if (w == kLeaf) out.push_back(static_cast<Symbol>(a));
  }
  return out;
}

WinningTrie winning_trie(const LanguageTrie& language) {
  WinningEngine engine(language.store());
  return engine.winning_trie(language);
}

CardinalityReport cardinality_check(const LanguageTrie& language, const LanguageTrie& winning) {
  if (language.depth() != winning.depth()) throw std::invalid_argument("cardinality_check: depth mismatch");
  CardinalityReport report;
  report.n = language.depth();
  report.lang_count = language.count();
  report.winning_count = winning.count();
  report.pass = report.lang_count == report.winning_count;
  return report;
}

nlohmann::json to_json(const CardinalityReport& report) {
  return {{"n", report.n}, {"lang_count", report.lang_count}, {"winning_count", report.winning_count},
          {"pass", report.pass}};
}

std::string to_csv(const CardinalityReport& report) {
  return "n,lang_count,winning_count,pass\n" + std::to_string(report.n) + "," + std::to_string(report.lang_count) +
         "," + std::to_string(report.winning_count) + "," + (report.pass ? "true" : "false") + "\n";
}

bool hereditary_check(const LanguageTrie& t) {
  const auto& store = *t.store();
  const auto k = store.alphabet_size();
  std::unordered_map<std::uint64_t, bool> subset_memo;
  std::function<bool(NodeId, NodeId)> subset = [&](NodeId x, NodeId y) -> bool {
    if (x == kEmpty || x == y) return true;
    if (y == kEmpty || store.count(x) > store.count(y)) return false;
    const auto key = (std::uint64_t{x} << 32) | y;
    if (auto it = subset_memo.find(key); it != subset_memo.end()) return it->second;
    bool result = true;
    for (std::size_t a = 0; a < k && result; ++a)
      result = subset(store.child(x, static_cast<Symbol>(a)), store.child(y, static_cast<Symbol>(a)));
    subset_memo.emplace(key, result);
    return result;
  };

  std::unordered_map<NodeId, bool> memo;
  std::function<bool(NodeId)> closed = [&](NodeId node) -> bool {
    if (node == kEmpty || node == kLeaf) return true;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a) {
      const auto c = store.child(node, static_cast<Symbol>(a));
      ok = closed(c) && (a == 0 || subset(c, store.child(node, static_cast<Symbol>(a - 1))));
    }
    memo.emplace(node, ok);
    return ok;
  };
  return closed(t.root());
}

LanguageTrie binary_restrict(const LanguageTrie& t) { return restrict_to_store(t, make_store(2)); }

LanguageTrie binarize(const LanguageTrie& t) {
  const auto& source = *t.store();
  const auto k = source.alphabet_size();
  auto target = make_store(2);
  // Support of a source node set: child 0 from symbol 0, child 1 from the
  // union of all nonzero symbols.
  std::map<std::vector<NodeId>, NodeId> memo;
  std::function<NodeId(std::vector<NodeId>)> support = [&](std::vector<NodeId> nodes) -> NodeId {
    std::erase(nodes, kEmpty);
    if (nodes.empty()) return kEmpty;
    if (nodes.front() == kLeaf) return kLeaf;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (auto it = memo.find(nodes); it != memo.end()) return it->second;
    std::vector<NodeId> zero, nonzero;
    for (auto node : nodes) {
      zero.push_back(source.child(node, 0));
      for (std::size_t a = 1; a < k; ++a) nonzero.push_back(source.child(node, static_cast<Symbol>(a)));
    }
    const NodeId children[2] = {support(std::move(zero)), support(std::move(nonzero))};
    const auto id = target->make(children);
    memo.emplace(std::move(nodes), id);
    return id;
  };
  return LanguageTrie(target, support({t.root()}), t.depth());
}

PowerCountReport power_count_check(const LanguageTrie& t) {
  if (!hereditary_check(t)) throw std::invalid_argument("power_count_check: trie is not hereditary");
  PowerCountReport report;
  report.n = t.depth();
  report.k = t.alphabet_size();
  report.count = t.count();
  report.binarized_count = binarize(t).count();
  std::uint64_t bound = 1;
  for (std::size_t i = 0; i < report.k; ++i) {
    if (report.binarized_count != 0 && bound > std::numeric_limits<std::uint64_t>::max() / report.binarized_count) {
      bound = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    bound *= report.binarized_count;
  }
  report.bound = bound;
  report.pass = report.count <= report.bound;
  return report;
}

}  // namespace wshift
