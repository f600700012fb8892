#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wshift/winning.hpp"

namespace wshift {

/// Word-building game for a branching structure z: at turn i the builder
/// offers z_i + 1 symbols, the opponent keeps one. The builder wins if the
/// finished word lies in L.
struct GameState {
  std::size_t n = 0;
  Word built;
  Word remaining;  // suffix of z still to be played; |built| + |remaining| = n
};

class GameEngine {
 public:
  explicit GameEngine(LanguageTrie language);

  const LanguageTrie& language() const noexcept { return language_; }

  /// Starting position. Throws NotWinning if z is not in W(L).
  GameState start(const BranchingStructure& z);

  bool finished(const GameState& state) const noexcept { return state.remaining.empty(); }
  bool is_winning(const GameState& state);

  /// The z_0 + 1 smallest symbols that keep the remaining structure
  /// winnable. Throws NotWinning from a losing position.
  std::vector<Symbol> next_move(const GameState& state);

  /// Applies the opponent's pick, which must be one of `offered`.
  GameState advance(const GameState& state, const std::vector<Symbol>& offered, Symbol choice) const;

 private:
  NodeId follower(const GameState& state) const;

  LanguageTrie language_;
  WinningEngine engine_;
};

enum class Opponent { Human, Max, Min };

/// Text session: prints "offer {a,b}" each turn, reads one symbol per turn
/// (or picks automatically), then prints "WIN word=... in_language=true".
/// Returns false if the finished word is not in L.
bool play_game(GameEngine& engine, const BranchingStructure& z, Opponent opponent, std::istream& in,
               std::ostream& out);

struct AdversaryReport {
  std::uint64_t plays = 0;
  std::uint64_t wins = 0;
  bool pass() const noexcept { return plays == wins; }
};

/// Plays every sequence of opponent choices against the engine.
AdversaryReport exhaustive_adversary(GameEngine& engine, const BranchingStructure& z);

}  // namespace wshift
