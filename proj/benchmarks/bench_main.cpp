#include <benchmark/benchmark.h>

#include <random>

#include "hallforge/double_algebra.hpp"

using namespace hallforge;

namespace {

FieldMatrix random_matrix(const GaloisField& f, std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, f.order() - 1);
  FieldMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, f.element(d(rng)));
  return m;
}

void BM_RankAndKernel(benchmark::State& state) {
  const auto& f = GaloisField::get(static_cast<int>(state.range(1)));
  std::mt19937 rng(5);
  const auto m = random_matrix(f, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank_and_kernel(m));
}
BENCHMARK(BM_RankAndKernel)->Args({16, 2})->Args({16, 9})->Args({64, 3});

// Cold registry each iteration: identification plus extension enumeration.
void BM_ExtCountsA2(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    QuiverCategory cat(Quiver::fixture("a2"), q);
    std::uint64_t total = 0;
    const auto labels = cat.iso_classes(2);
    for (const auto& a : labels)
      for (const auto& b : labels) total += cat.ext_counts(a, b)->size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_ExtCountsA2)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_StarProductA2(benchmark::State& state) {
  QuiverCategory cat(Quiver::fixture("a2"), 3);
  HallAlgebra hall(cat);
  const auto labels = cat.iso_classes(2);
  for (auto _ : state)
    for (const auto& a : labels)
      for (const auto& b : labels) benchmark::DoNotOptimize(hall.star(hall.basis(a), hall.basis(b)));
}
BENCHMARK(BM_StarProductA2)->Unit(benchmark::kMicrosecond);

// Fresh algebra each iteration so normal-form products are recomputed.
void BM_DoubleMultiplyCold(benchmark::State& state) {
  QuiverCategory cat(Quiver::fixture("a2"), static_cast<int>(state.range(0)));
  HallAlgebra hall(cat);
  ComplexCategory cx(cat);
  const auto s1 = cat.identify(cat.simple(0)), s2 = cat.identify(cat.simple(1));
  for (auto _ : state) {
    DoubleAlgebra dh(hall, cx);
    benchmark::DoNotOptimize(dh.multiply({dh.e(s1), dh.f(s2), dh.e(s2), dh.f(s1)}));
  }
}
BENCHMARK(BM_DoubleMultiplyCold)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_TriangularA2(benchmark::State& state) {
  QuiverCategory cat(Quiver::fixture("a2"), 2);
  HallAlgebra hall(cat);
  ComplexCategory cx(cat);
  DoubleAlgebra dh(hall, cx);
  for (auto _ : state) benchmark::DoNotOptimize(dh.check_triangular_basis(2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TriangularA2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  QuiverCategory cat(Quiver::fixture("kronecker"), 3);
  ComplexCategory cx(cat);
  const auto a = cat.iso_classes(2).back();
  const auto m = cx.direct_sum(cx.direct_sum(cx.c_of(a), cx.shift(cx.c_of(a))), cx.k_of({1, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(cx.decompose(m));
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
