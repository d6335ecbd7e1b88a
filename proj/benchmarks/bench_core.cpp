#include <benchmark/benchmark.h>

#include <random>

#include "gtc/fincat.hpp"
#include "gtc/grpd.hpp"
#include "gtc/homology.hpp"
#include "gtc/smith.hpp"

using namespace gtc;

namespace {

IntMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
  }
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m, state.range(1) != 0));
}
BENCHMARK(BM_SmithNormalForm)->ArgsProduct({{4, 8, 16, 32}, {0, 1}});

void BM_NerveDelta(benchmark::State& state) {
  const CatPtr c = standard::delta(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nerve(c, 3));
}
BENCHMARK(BM_NerveDelta)->DenseRange(2, 6, 2);

void BM_HomologyCyclic(benchmark::State& state) {
  const CatPtr c = standard::cyclic_group(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology(c, 3));
}
BENCHMARK(BM_HomologyCyclic)->Arg(2)->Arg(3)->Arg(5);

// Dihedral group of order 2n: <r, s | r^n, s^2, (rs)^2>.
void BM_CosetEnumerationDihedral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  GroupPresentation p;
  p.generators = {"r", "s"};
  p.relators.push_back(Word(n, letter(0)));
  p.relators.push_back({letter(1), letter(1)});
  p.relators.push_back({letter(0), letter(1), letter(0), letter(1)});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cosets(p, kDefaultBudget));
}
BENCHMARK(BM_CosetEnumerationDihedral)->RangeMultiplier(4)->Range(4, 256);

void BM_EnumerateFunctors(benchmark::State& state) {
  const CatPtr dom = standard::delta(static_cast<unsigned>(state.range(0)));
  const CatPtr cod = standard::delta(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_functors(dom, cod));
}
BENCHMARK(BM_EnumerateFunctors)->Args({1, 3})->Args({2, 3})->Args({3, 4});

}  // namespace

BENCHMARK_MAIN();
