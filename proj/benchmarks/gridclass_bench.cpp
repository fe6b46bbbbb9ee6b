#include <benchmark/benchmark.h>

#include <random>

#include "gridclass/analysis.hpp"
#include "gridclass/compile.hpp"
#include "gridclass/sentences.hpp"

using namespace gridclass;

namespace {

SignedGridMatrix matrix(const char* text) { return refine_to_pmm(parse_matrix_inline(text)); }

const char* const kMatrices[] = {"1", "1 -1", "1 / 1", "1 0 / 0 1", "1 1 / 1 -1"};

void BM_ApplyWord(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  std::mt19937 rng(1);
  Word w(static_cast<std::size_t>(state.range(1)));
  for (auto& letter : w) letter = static_cast<CellIndex>(rng() % s.alphabet_size());
  for (auto _ : state) benchmark::DoNotOptimize(apply_word(s, w));
}
BENCHMARK(BM_ApplyWord)->ArgsProduct({{1, 4}, {8, 64}});

void BM_Membership(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  const auto perms = all_permutations(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state)
    for (const auto& p : perms) benchmark::DoNotOptimize(analysis::is_member(p, s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(perms.size()));
}
BENCHMARK(BM_Membership)->ArgsProduct({{1, 2, 4}, {6, 7}})->Unit(benchmark::kMillisecond);

void BM_CompileTraceNormalForm(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(automata::compile(mso::trace_nf_sentence(s), s.alphabet_size()));
}
BENCHMARK(BM_CompileTraceNormalForm)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_CompileBijection(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(automata::compile(mso::bij_sentence(s), s.alphabet_size()));
}
BENCHMARK(BM_CompileBijection)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_GeneratingFunction(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::generating_function(s));
}
BENCHMARK(BM_GeneratingFunction)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BoundedBasis(benchmark::State& state) {
  const auto s = matrix(kMatrices[state.range(0)]);
  analysis::BasisOptions opts;
  opts.max_length = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::compute_basis(s, opts));
}
BENCHMARK(BM_BoundedBasis)->ArgsProduct({{1, 2, 4}, {6, 7}})->Unit(benchmark::kMillisecond);

void BM_CertifiedBasisIncreasing(benchmark::State& state) {
  const auto s = matrix("1");
  analysis::BasisOptions opts;
  opts.extension_matrix = analysis::small_extension_matrix_for_increasing();
  for (auto _ : state) benchmark::DoNotOptimize(analysis::compute_basis(s, opts));
}
BENCHMARK(BM_CertifiedBasisIncreasing)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
