#include "wshift/game.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "wshift/errors.hpp"

namespace wshift {

GameEngine::GameEngine(LanguageTrie language) : language_(std::move(language)), engine_(language_.store()) {}

NodeId GameEngine::follower(const GameState& state) const {
  const auto& store = *language_.store();
  NodeId node = language_.root();
  for (Symbol a : state.built) {
    if (node == NodeStore::kEmpty) break;
    node = store.child(node, a);
  }
  return node;
}

bool GameEngine::is_winning(const GameState& state) {
  if (state.built.size() + state.remaining.size() != state.n || state.n != language_.depth()) return false;
  const auto node = follower(state);
  if (state.remaining.empty()) return node == NodeStore::kLeaf;
  if (state.remaining.front() >= language_.alphabet_size()) return false;
  const auto winnable =
      engine_.winnable_symbols(node, std::span<const Symbol>(state.remaining).subspan(1));
  return winnable.size() > state.remaining.front();
}

GameState GameEngine::start(const BranchingStructure& z) {
  GameState state{language_.depth(), {}, z.entries()};
  if (z.size() != language_.depth() || !is_winning(state))
    throw NotWinning("structure " + format_word(z.view(), language_.alphabet_size()) + " is not winning");
  return state;
}

std::vector<Symbol> GameEngine::next_move(const GameState& state) {
  if (finished(state)) throw std::logic_error("next_move on a finished game");
  if (!is_winning(state)) throw NotWinning("position is not winning");
  auto winnable =
      engine_.winnable_symbols(follower(state), std::span<const Symbol>(state.remaining).subspan(1));
  winnable.resize(std::size_t{state.remaining.front()} + 1);
  return winnable;
}

GameState GameEngine::advance(const GameState& state, const std::vector<Symbol>& offered, Symbol choice) const {
  if (std::find(offered.begin(), offered.end(), choice) == offered.end())
    throw InputError("symbol " + std::to_string(choice) + " was not offered");
  GameState next = state;
  next.built.push_back(choice);
  next.remaining.erase(next.remaining.begin());
  return next;
}

namespace {

std::string format_set(const std::vector<Symbol>& symbols) {
  std::string out = "{";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(symbols[i]);
  }
  return out + "}";
}

}  // namespace

bool play_game(GameEngine& engine, const BranchingStructure& z, Opponent opponent, std::istream& in,
               std::ostream& out) {
  const auto k = engine.language().alphabet_size();
  auto state = engine.start(z);
  out << "game n=" << state.n << " structure=" << format_word(z.view(), k) << '\n';
  while (!engine.finished(state)) {
    const auto offered = engine.next_move(state);
    out << "offer " << format_set(offered) << '\n';
    Symbol choice = 0;
    if (opponent == Opponent::Human) {
      while (true) {
        out << "choose> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) throw InputError("input ended before the game finished");
        const auto first = line.find_first_not_of(" \t\r");
        const auto last = line.find_last_not_of(" \t\r");
        line = first == std::string::npos ? std::string{} : line.substr(first, last - first + 1);
        try {
          const auto w = parse_word(line, std::max<std::size_t>(k, 11));
          if (w.size() == 1 && std::find(offered.begin(), offered.end(), w[0]) != offered.end()) {
            choice = w[0];
            break;
          }
        } catch (const InputError&) {
        }
        out << "invalid choice, pick one of " << format_set(offered) << '\n';
      }
    } else {
      choice = opponent == Opponent::Max ? offered.back() : offered.front();
      out << "pick " << choice << '\n';
    }
    state = engine.advance(state, offered, choice);
  }
  const bool in_language = engine.language().contains(state.built);
  out << (in_language ? "WIN" : "LOSS") << " word=" << format_word(state.built, k)
      << " in_language=" << (in_language ? "true" : "false") << '\n';
  return in_language;
}

AdversaryReport exhaustive_adversary(GameEngine& engine, const BranchingStructure& z) {
  AdversaryReport report;
  const auto root = engine.start(z);
  std::vector<GameState> stack{root};
  while (!stack.empty()) {
    auto state = std::move(stack.back());
    stack.pop_back();
    if (engine.finished(state)) {
      ++report.plays;
      if (engine.language().contains(state.built)) ++report.wins;
      continue;
    }
    const auto offered = engine.next_move(state);
    for (Symbol choice : offered) stack.push_back(engine.advance(state, offered, choice));
  }
  return report;
}

}  // namespace wshift
