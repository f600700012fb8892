#include "wshift/trie.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "wshift/errors.hpp"

namespace wshift {

NodeStore::NodeStore(std::size_t alphabet_size, std::size_t max_nodes)
    : k_(alphabet_size), max_nodes_(max_nodes), table_(64, Hash{this}, Equal{this}) {
  if (k_ == 0) throw InputError("alphabet size must be at least 1");
  if (max_nodes_ < 2) throw InputError("node budget must allow at least two nodes");
  children_.assign(2 * k_, kEmpty);
  counts_ = {0, 1};
}

std::size_t NodeStore::Hash::operator()(NodeId id) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (NodeId c : store->children(id)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool NodeStore::Equal::operator()(NodeId a, NodeId b) const noexcept {
  const auto ca = store->children(a);
  const auto cb = store->children(b);
  return std::equal(ca.begin(), ca.end(), cb.begin());
}

NodeId NodeStore::make(std::span<const NodeId> children) {
  if (children.size() != k_) throw std::invalid_argument("NodeStore::make: wrong number of children");
  std::uint64_t total = 0;
  for (NodeId c : children) {
    const auto n = counts_[c];
    if (total > std::numeric_limits<std::uint64_t>::max() - n)
      throw BudgetExceeded("word count overflows 64 bits");
    total += n;
  }
  if (total == 0) return kEmpty;

  // Stage the candidate at the end of the table and look it up by content.
  const auto candidate = static_cast<NodeId>(counts_.size());
  children_.insert(children_.end(), children.begin(), children.end());
  counts_.push_back(total);
  if (auto it = table_.find(candidate); it != table_.end()) {
    children_.resize(children_.size() - k_);
    counts_.pop_back();
    return *it;
  }
  if (counts_.size() > max_nodes_) {
    children_.resize(children_.size() - k_);
    counts_.pop_back();
    throw BudgetExceeded("trie node budget of " + std::to_string(max_nodes_) + " exceeded");
  }
  table_.insert(candidate);
  return candidate;
}

namespace {
std::atomic<std::size_t> g_default_node_budget{NodeStore::kDefaultMaxNodes};
}  // namespace

std::size_t default_node_budget() noexcept { return g_default_node_budget.load(); }
void set_default_node_budget(std::size_t max_nodes) noexcept { g_default_node_budget.store(max_nodes); }

StorePtr make_store(std::size_t alphabet_size) { return make_store(alphabet_size, default_node_budget()); }

StorePtr make_store(std::size_t alphabet_size, std::size_t max_nodes) {
  return std::make_shared<NodeStore>(alphabet_size, max_nodes);
}

LanguageTrie::LanguageTrie(StorePtr store, NodeId root, std::size_t depth)
    : store_(std::move(store)), root_(root), depth_(depth) {
  if (!store_) throw std::invalid_argument("LanguageTrie needs a store");
  if (depth_ == 0 && root_ != NodeStore::kEmpty && root_ != NodeStore::kLeaf)
    throw std::invalid_argument("depth-0 trie must be empty or the leaf");
  if (depth_ > 0 && root_ == NodeStore::kLeaf) throw std::invalid_argument("leaf used as a root of positive depth");
}

LanguageTrie LanguageTrie::empty(StorePtr store, std::size_t depth) {
  return LanguageTrie(std::move(store), NodeStore::kEmpty, depth);
}

namespace {

NodeId build_sorted(NodeStore& store, std::span<const Word> words, std::size_t position, std::size_t depth) {
  if (words.empty()) return NodeStore::kEmpty;
  if (position == depth) return NodeStore::kLeaf;
  std::vector<NodeId> children(store.alphabet_size(), NodeStore::kEmpty);
  std::size_t begin = 0;
  while (begin < words.size()) {
    const auto a = words[begin][position];
    auto end = begin;
    while (end < words.size() && words[end][position] == a) ++end;
    children[a] = build_sorted(store, words.subspan(begin, end - begin), position + 1, depth);
    begin = end;
  }
  return store.make(children);
}

}  // namespace

LanguageTrie LanguageTrie::from_words(StorePtr store, std::size_t depth, std::vector<Word> words) {
  const auto k = store->alphabet_size();
  for (const auto& w : words) {
    if (w.size() != depth) throw InputError("word of length " + std::to_string(w.size()) + " in a level of length " +
                                            std::to_string(depth));
    for (Symbol s : w)
      if (s >= k) throw InputError("symbol out of range for alphabet of size " + std::to_string(k));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  const auto root = build_sorted(*store, words, 0, depth);
  return LanguageTrie(std::move(store), root, depth);
}

bool LanguageTrie::contains(std::span<const Symbol> w) const noexcept {
  if (w.size() != depth_) return false;
  NodeId node = root_;
  for (Symbol a : w) {
    if (node == NodeStore::kEmpty || a >= store_->alphabet_size()) return false;
    node = store_->child(node, a);
  }
  return node == NodeStore::kLeaf;
}

LanguageTrie LanguageTrie::decompose(Symbol a) const {
  if (depth_ == 0) throw std::invalid_argument("cannot decompose a depth-0 trie");
  if (a >= store_->alphabet_size()) throw std::invalid_argument("decompose: symbol out of range");
  const auto child = root_ == NodeStore::kEmpty ? NodeStore::kEmpty : store_->child(root_, a);
  return LanguageTrie(store_, child, depth_ - 1);
}

std::vector<Word> LanguageTrie::words() const {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count()));
  for_each_word([&](std::span<const Symbol> w) { out.emplace_back(w.begin(), w.end()); });
  return out;
}

Word LanguageTrie::first_word() const {
  if (is_empty()) throw std::logic_error("first_word of an empty trie");
  Word w;
  NodeId node = root_;
  while (w.size() < depth_) {
    for (Symbol a = 0;; ++a) {
      const auto c = store_->child(node, a);
      if (c != NodeStore::kEmpty) {
        w.push_back(a);
        node = c;
        break;
      }
    }
  }
  return w;
}

bool operator==(const LanguageTrie& a, const LanguageTrie& b) {
  if (a.depth_ != b.depth_) return false;
  if (a.store_ == b.store_) return a.root_ == b.root_;
  if (a.count() != b.count()) return false;
  return a.words() == b.words();
}

}  // namespace wshift
