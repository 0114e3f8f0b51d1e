#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "intertwine/kz.hpp"
#include "intertwine/matrix.hpp"
#include "intertwine/verma.hpp"

using namespace intertwine;

namespace {

ModulePtr make(const WeightModule& m) { return std::make_shared<const WeightModule>(m); }

Matrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(num(rng), den(rng));
  return m;
}

// Normal ordering e(1) f(1) ... on the top of a fresh module, so the cache
// does not hide the recursion.
void BM_NormalOrdering(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const GeneralizedVermaModule v(make(WeightModule::finite(2)), Scalar(3, 2), depth + 1);
    GradedVector x = GradedVector::basis(BasisKey{{}, 0});
    for (int d = depth; d >= 1; --d) x = v.apply(d % 2 == 0 ? 0 : 2, -1, x);
    for (int d = 1; d <= depth; ++d) benchmark::DoNotOptimize(v.apply(1, d, x));
  }
}
BENCHMARK(BM_NormalOrdering)->DenseRange(2, 6, 2);

void BM_DegreeBasis(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const GeneralizedVermaModule v(make(WeightModule::finite(3)), Scalar(1), m);
  for (auto _ : state) benchmark::DoNotOptimize(v.degree_basis(m, Scalar(1)));
}
BENCHMARK(BM_DegreeBasis)->DenseRange(2, 6, 2);

void BM_BuildPrefix(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  auto tensor = std::make_shared<const TensorModule>(make(WeightModule::finite(2)), make(WeightModule::finite(3)));
  const ModulePtr u3 = make(WeightModule::finite(1));
  const GHom seed = hom_space(tensor, u3).at(0);
  for (auto _ : state) {
    const auto target = std::make_shared<const VermaTarget>(u3, Scalar(7, 5), N);
    benchmark::DoNotOptimize(build_prefix(seed, target, N).built());
  }
}
BENCHMARK(BM_BuildPrefix)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_BuildPrefixContragredient(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  auto tensor = std::make_shared<const TensorModule>(make(WeightModule::finite(2)), make(WeightModule::finite(2)));
  const ModulePtr u3 = make(WeightModule::finite(0));
  const GHom seed = hom_space(tensor, u3).at(0);
  for (auto _ : state) {
    const auto target = std::make_shared<const ContragredientTarget>(u3, Scalar(4), N);
    benchmark::DoNotOptimize(build_prefix_contragredient(seed, target, N).built());
  }
}
BENCHMARK(BM_BuildPrefixContragredient)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Rref(benchmark::State& state) {
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(4, 32);

void BM_Inverse(benchmark::State& state) {
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(m));
}
BENCHMARK(BM_Inverse)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
BENCHMARK_MAIN();
