#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_set>
#include <vector>

#include "wshift/word.hpp"

namespace wshift {

using NodeId = std::uint32_t;

/// Hash-consed node table for tries over one alphabet. Equal subtrees get
/// equal ids, so within a store trie equality is id equality and leaf
/// counts are computed once per distinct subtree.
///
/// A node holds one child id per symbol. Depth is implicit: every path from
/// a node to kLeaf has the same length. Any node whose children are all
/// kEmpty collapses to kEmpty.
///
/// Insertion is single-writer. Readers may share a store freely once the
/// tries they read are built.
class NodeStore {
 public:
  static constexpr NodeId kEmpty = 0;
  static constexpr NodeId kLeaf = 1;
  static constexpr std::size_t kDefaultMaxNodes = 10'000'000;

  explicit NodeStore(std::size_t alphabet_size, std::size_t max_nodes = kDefaultMaxNodes);
  NodeStore(const NodeStore&) = delete;
  NodeStore& operator=(const NodeStore&) = delete;

  std::size_t alphabet_size() const noexcept { return k_; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t max_nodes() const noexcept { return max_nodes_; }

  /// Get-or-insert. `children.size()` must equal the alphabet size.
  /// Throws BudgetExceeded past max_nodes().
  NodeId make(std::span<const NodeId> children);

  NodeId child(NodeId node, Symbol a) const noexcept { return children_[std::size_t{node} * k_ + a]; }
  std::span<const NodeId> children(NodeId node) const noexcept {
    return {children_.data() + std::size_t{node} * k_, k_};
  }
  std::uint64_t count(NodeId node) const noexcept { return counts_[node]; }

 private:
  struct Hash {
    const NodeStore* store;
    std::size_t operator()(NodeId id) const noexcept;
  };
  struct Equal {
    const NodeStore* store;
    bool operator()(NodeId a, NodeId b) const noexcept;
  };

  std::size_t k_;
  std::size_t max_nodes_;
  std::vector<NodeId> children_;
  std::vector<std::uint64_t> counts_;
  std::unordered_set<NodeId, Hash, Equal> table_;
};

using StorePtr = std::shared_ptr<NodeStore>;

/// Node cap used by make_store when none is given. Process-wide.
std::size_t default_node_budget() noexcept;
void set_default_node_budget(std::size_t max_nodes) noexcept;

StorePtr make_store(std::size_t alphabet_size);
StorePtr make_store(std::size_t alphabet_size, std::size_t max_nodes);

/// A set of words of one fixed length, held as a root id in a NodeStore.
class LanguageTrie {
 public:
  LanguageTrie(StorePtr store, NodeId root, std::size_t depth);

  static LanguageTrie empty(StorePtr store, std::size_t depth);
  /// Builds from arbitrary words of length `depth`; duplicates are merged.
  static LanguageTrie from_words(StorePtr store, std::size_t depth, std::vector<Word> words);

  const StorePtr& store() const noexcept { return store_; }
  NodeId root() const noexcept { return root_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t alphabet_size() const noexcept { return store_->alphabet_size(); }

  std::uint64_t count() const noexcept { return store_->count(root_); }
  bool is_empty() const noexcept { return root_ == NodeStore::kEmpty; }
  bool contains(std::span<const Symbol> w) const noexcept;

  /// {w : a.w in L}, depth - 1, sharing nodes with this trie.
  LanguageTrie decompose(Symbol a) const;

  /// Visits words in lexicographic order of symbol values.
  template <class Visitor>
  void for_each_word(Visitor&& visit) const {
    Word buffer;
    buffer.reserve(depth_);
    walk(root_, buffer, visit);
  }
  std::vector<Word> words() const;

  /// Leftmost word; the trie must be nonempty.
  Word first_word() const;

  friend bool operator==(const LanguageTrie& a, const LanguageTrie& b);

 private:
  template <class Visitor>
  void walk(NodeId node, Word& buffer, Visitor& visit) const {
    if (node == NodeStore::kEmpty) return;
    if (buffer.size() == depth_) {
      visit(std::span<const Symbol>(buffer));
      return;
    }
    const auto k = store_->alphabet_size();
    for (std::size_t a = 0; a < k; ++a) {
      const auto c = store_->child(node, static_cast<Symbol>(a));
      if (c == NodeStore::kEmpty) continue;
      buffer.push_back(static_cast<Symbol>(a));
      walk(c, buffer, visit);
      buffer.pop_back();
    }
  }

  StorePtr store_;
  NodeId root_;
  std::size_t depth_;
};

}  // namespace wshift
