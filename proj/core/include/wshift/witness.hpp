#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wshift/winning.hpp"

namespace wshift {

/// Finite tree (x^v)_{v <= z} in L: leaves sorted by index word v.
struct TreeWitness {
  struct Leaf {
    Word index;
    Word word;
  };

  std::size_t n = 0;
  BranchingStructure structure;
  std::vector<Leaf> leaves;
};

/// Builds a tree for z greedily: at each node the z_i + 1 smallest symbols
/// whose tail stays winning. Throws NotWinning if z is not in W(L).
TreeWitness extract_tree(const LanguageTrie& language, const BranchingStructure& z);
TreeWitness extract_tree(WinningEngine& engine, const LanguageTrie& language, const BranchingStructure& z);

/// Checks that leaves are exactly the index words v <= z, that every word is
/// in L, and that first differences of words match those of indices.
/// Pairwise up to kPairwiseLimit pairs, per-node above it.
bool verify_tree(const TreeWitness& tree, const LanguageTrie& language);
inline constexpr std::uint64_t kPairwiseLimit = std::uint64_t{1} << 15;

/// Lines "v -> x^v".
std::string format_tree(const TreeWitness& tree, std::size_t alphabet_size);

struct IndependenceSet {
  std::size_t n = 0;
  std::vector<std::size_t> positions;
  std::uint64_t projection_count = 0;
  bool verified = false;
};

/// |{w|_N : w in L}|.
std::uint64_t projection_count(const LanguageTrie& language, std::span<const std::size_t> positions);

/// True iff every binary pattern on N occurs in L. Throws InputError for a
/// position outside [0, depth).
bool verify_independence(const LanguageTrie& language, std::span<const std::size_t> positions);

/// N = support(z) for a binary winning z, verified. Throws NotWinning if z
/// is not winning and std::logic_error if verification fails.
IndependenceSet independence_from_structure(const BranchingStructure& z, const LanguageTrie& language);
IndependenceSet independence_from_structure(WinningEngine& engine, const BranchingStructure& z,
                                            const LanguageTrie& language);

nlohmann::json to_json(const IndependenceSet& set);

}  // namespace wshift
