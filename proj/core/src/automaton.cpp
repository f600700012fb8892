#include "wshift/automaton.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "wshift/errors.hpp"
#include "wshift/gallery.hpp"

namespace wshift {

FollowerAutomaton::FollowerAutomaton(std::size_t alphabet_size, std::vector<std::size_t> transitions,
                                     std::size_t start)
    : k_(alphabet_size), transitions_(std::move(transitions)), start_(start) {
  if (k_ == 0 || transitions_.empty() || transitions_.size() % k_ != 0)
    throw std::invalid_argument("transition table does not match the alphabet");
  const auto states = transitions_.size() / k_;
  if (start_ >= states) throw std::invalid_argument("start state out of range");
  for (std::size_t s = 0; s < states; ++s) {
    bool has_edge = false;
    for (std::size_t a = 0; a < k_; ++a) {
      const auto t = transitions_[s * k_ + a];
      if (t == kNoState) continue;
      if (t >= states) throw std::invalid_argument("transition target out of range");
      has_edge = true;
    }
    if (!has_edge) throw std::invalid_argument("automaton is not trimmed");
  }
}

bool FollowerAutomaton::member(std::span<const Symbol> w) const noexcept {
  std::size_t state = start_;
  for (Symbol a : w) {
    if (a >= k_) return false;
    state = next(state, a);
    if (state == kNoState) return false;
  }
  return true;
}

namespace {

constexpr auto kNone = FollowerAutomaton::kNoState;

/// Repeatedly removes states without a surviving successor. Returns the
/// renumbered table and the old -> new map (kNone for removed states).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> trim(std::size_t k, std::vector<std::size_t> table) {
  const auto states = table.size() / k;
  std::vector<bool> alive(states, true);
  std::vector<std::size_t> out_degree(states, 0);
  std::vector<std::vector<std::size_t>> predecessors(states);
  for (std::size_t s = 0; s < states; ++s)
    for (std::size_t a = 0; a < k; ++a)
      if (const auto t = table[s * k + a]; t != kNone) {
        ++out_degree[s];
        predecessors[t].push_back(s);
      }

  std::queue<std::size_t> dead;
  for (std::size_t s = 0; s < states; ++s)
    if (out_degree[s] == 0) dead.push(s);
  while (!dead.empty()) {
    const auto s = dead.front();
    dead.pop();
    if (!alive[s]) continue;
    alive[s] = false;
    for (auto p : predecessors[s])
      if (alive[p] && --out_degree[p] == 0) dead.push(p);
  }

  std::vector<std::size_t> renumber(states, kNone);
  std::size_t next_id = 0;
  for (std::size_t s = 0; s < states; ++s)
    if (alive[s]) renumber[s] = next_id++;
  std::vector<std::size_t> trimmed(next_id * k, kNone);
  for (std::size_t s = 0; s < states; ++s) {
    if (!alive[s]) continue;
    for (std::size_t a = 0; a < k; ++a)
      if (const auto t = table[s * k + a]; t != kNone && alive[t]) trimmed[renumber[s] * k + a] = renumber[t];
  }
  return {std::move(trimmed), std::move(renumber)};
}

}  // namespace

FollowerAutomaton compile_sft(std::size_t k, const std::vector<Word>& forbidden) {
  // Pattern trie; node 0 is the empty suffix.
  std::vector<std::size_t> go(k, kNone);
  std::vector<bool> banned{false};
  for (const auto& w : forbidden) {
    if (w.empty()) throw InputError("forbidden words must be nonempty");
    std::size_t node = 0;
    for (Symbol a : w) {
      if (a >= k) throw InputError("forbidden word uses a symbol outside the alphabet");
      if (go[node * k + a] == kNone) {
        go[node * k + a] = banned.size();
        banned.push_back(false);
        go.resize(go.size() + k, kNone);
      }
      node = go[node * k + a];
    }
    banned[node] = true;
  }

  // Failure links in BFS order turn the trie into a complete automaton.
  const auto nodes = banned.size();
  std::vector<std::size_t> fail(nodes, 0);
  std::queue<std::size_t> frontier;
  for (std::size_t a = 0; a < k; ++a) {
    auto& t = go[a];
    if (t == kNone) {
      t = 0;
    } else {
      fail[t] = 0;
      frontier.push(t);
    }
  }
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    banned[u] = banned[u] || banned[fail[u]];
    for (std::size_t a = 0; a < k; ++a) {
      auto& t = go[u * k + a];
      if (t == kNone) {
        t = go[fail[u] * k + a];
      } else {
        fail[t] = go[fail[u] * k + a];
        frontier.push(t);
      }
    }
  }

  // Banned nodes are sinks: drop them, then trim what cannot continue.
  for (std::size_t u = 0; u < nodes; ++u)
    for (std::size_t a = 0; a < k; ++a)
      if (banned[u] || banned[go[u * k + a]]) go[u * k + a] = kNone;
  auto [table, renumber] = trim(k, std::move(go));
  if (renumber[0] == kNone) throw InputError("subshift is empty: every state was trimmed away");
  return FollowerAutomaton(k, std::move(table), renumber[0]);
}

FollowerAutomaton compile_automaton(std::size_t k, const AutomatonPresentation& graph) {
  // Nondeterministic relation, trimmed first so every surviving subset is live.
  std::vector<std::vector<std::size_t>> successors(graph.states * k);
  for (const auto& e : graph.edges) {
    if (e.from >= graph.states || e.to >= graph.states || e.symbol >= k)
      throw InputError("automaton edge out of range");
    successors[e.from * k + e.symbol].push_back(e.to);
  }
  std::vector<bool> alive(graph.states, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < graph.states; ++s) {
      if (!alive[s]) continue;
      bool has_edge = false;
      for (std::size_t a = 0; a < k && !has_edge; ++a)
        for (auto t : successors[s * k + a])
          if (alive[t]) {
            has_edge = true;
            break;
          }
      if (!has_edge) {
        alive[s] = false;
        changed = true;
      }
    }
  }

  std::vector<std::size_t> initial;
  if (graph.start.empty()) {
    for (std::size_t s = 0; s < graph.states; ++s) initial.push_back(s);
  } else {
    initial = graph.start;
  }
  std::erase_if(initial, [&](std::size_t s) { return !alive[s]; });
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  if (initial.empty()) throw InputError("subshift is empty: every state was trimmed away");

  std::map<std::vector<std::size_t>, std::size_t> ids;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> table;
  auto intern = [&](std::vector<std::size_t> subset) {
    auto [it, inserted] = ids.emplace(subset, subsets.size());
    if (inserted) {
      subsets.push_back(std::move(subset));
      table.resize(table.size() + k, kNone);
    }
    return it->second;
  };
  intern(initial);
  for (std::size_t id = 0; id < subsets.size(); ++id) {
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::size_t> target;
      for (auto s : subsets[id])
        for (auto t : successors[s * k + a])
          if (alive[t]) target.push_back(t);
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      const auto t = intern(std::move(target));
      table[id * k + a] = t;
    }
  }
  return FollowerAutomaton(k, std::move(table), 0);
}

FollowerAutomaton compile(const SubshiftSpec& spec) {
  validate(spec);
  const auto k = spec.alphabet.size();
  if (const auto* sft = std::get_if<SftPresentation>(&spec.presentation)) return compile_sft(k, sft->forbidden);
  if (const auto* graph = std::get_if<AutomatonPresentation>(&spec.presentation)) return compile_automaton(k, *graph);
  const auto& builtin = std::get<BuiltinPresentation>(spec.presentation);
  if (auto finite = finite_memory_form(spec)) return compile(*finite);
  throw InputError("builtin '" + builtin.name + "' has no finite-memory form and cannot be compiled");
}

}  // namespace wshift
