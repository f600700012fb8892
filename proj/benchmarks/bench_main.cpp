#include <benchmark/benchmark.h>

#include "wshift/automaton.hpp"
#include "wshift/gallery.hpp"
#include "wshift/language.hpp"
#include "wshift/oracle.hpp"
#include "wshift/winning.hpp"

using namespace wshift;

namespace {

void BM_LanguageTrieGolden(benchmark::State& state) {
  const auto aut = compile(golden_mean());
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(language_trie(aut, n).count());
}
BENCHMARK(BM_LanguageTrieGolden)->Arg(8)->Arg(16)->Arg(24);

void BM_LanguageTrieGapIdentity(benchmark::State& state) {
  const auto source = open_source(builtin_spec("gap:n"));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(source->level(n).count());
}
BENCHMARK(BM_LanguageTrieGapIdentity)->Arg(12)->Arg(18)->Arg(24);

void BM_WinningTrie(benchmark::State& state, const char* name) {
  const auto source = open_source(builtin_spec(name));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto store = make_store(source->alphabet_size());
    WinningEngine engine(store);
    benchmark::DoNotOptimize(engine.winning_trie(source->level(n, store)).count());
  }
}
BENCHMARK_CAPTURE(BM_WinningTrie, golden, "golden")->Arg(12)->Arg(24);
BENCHMARK_CAPTURE(BM_WinningTrie, full3, "full:3")->Arg(8)->Arg(16);
BENCHMARK_CAPTURE(BM_WinningTrie, gap_n, "gap:n")->Arg(12)->Arg(20);
BENCHMARK_CAPTURE(BM_WinningTrie, prop3, "prop3:4")->Arg(12)->Arg(18);

void BM_OracleVsWinning(benchmark::State& state, const char* name) {
  const auto source = open_source(builtin_spec(name));
  const auto l = source->level(static_cast<std::size_t>(state.range(0)));
  const auto w = winning_trie(l);
  OracleBudget budget;
  budget.max_leaves = 243;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_vs_winning(l, w, budget).accepted);
}
BENCHMARK_CAPTURE(BM_OracleVsWinning, golden, "golden")->Arg(5);
BENCHMARK_CAPTURE(BM_OracleVsWinning, full3, "full:3")->Arg(4)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
