#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wshift/subshift_spec.hpp"
#include "wshift/word.hpp"

namespace wshift {

/// Deterministic, trimmed machine form of a subshift: every state has at
/// least one outgoing transition, so every finite path from the start state
/// extends to an infinite one and path labels are exactly the language.
class FollowerAutomaton {
 public:
  static constexpr std::size_t kNoState = static_cast<std::size_t>(-1);

  /// `transitions` is row-major (state, symbol) -> state or kNoState. The
  /// constructor rejects tables that are not trimmed.
  FollowerAutomaton(std::size_t alphabet_size, std::vector<std::size_t> transitions, std::size_t start);

  std::size_t alphabet_size() const noexcept { return k_; }
  std::size_t state_count() const noexcept { return transitions_.size() / k_; }
  std::size_t start() const noexcept { return start_; }

  std::size_t next(std::size_t state, Symbol a) const noexcept { return transitions_[state * k_ + a]; }

  /// True iff w is a word of the subshift. O(|w|).
  bool member(std::span<const Symbol> w) const noexcept;

 private:
  std::size_t k_;
  std::vector<std::size_t> transitions_;
  std::size_t start_;
};

/// Avoid-automaton over forbidden-word suffix states with a failure
/// structure, trimmed to its infinite core. Throws InputError when the
/// subshift is empty.
FollowerAutomaton compile_sft(std::size_t alphabet_size, const std::vector<Word>& forbidden);

/// Trims the graph, then determinizes by subset construction.
FollowerAutomaton compile_automaton(std::size_t alphabet_size, const AutomatonPresentation& graph);

/// Dispatches on the presentation. Builtins compile only when the gallery
/// supplies a finite-memory form; otherwise InputError.
FollowerAutomaton compile(const SubshiftSpec& spec);

}  // namespace wshift
