// OpenMP rank kernels against the serial reference implementations, on dense
// random input and on the banded block-Toeplitz matrices that compress builds.
//
//   sylvan_bench --benchmark_filter=Rational
//   OMP_NUM_THREADS=4 sylvan_bench

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "sylvan/extension_rank.hpp"
#include "sylvan/linalg.hpp"

namespace {

using namespace sylvan;

Matrix<Rational> dense_rational(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(-9, 9);
  Matrix<Rational> a(n, n, Rational(0));
  for (auto& x : a.data()) x = Rational(c(rng), 1 + static_cast<long>(rng() % 4));
  for (auto& x : a.data()) x.canonicalize();
  return a;
}

Matrix<std::uint64_t> dense_mod_p(std::size_t n, std::uint64_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix<std::uint64_t> a(n, n, 0);
  for (auto& x : a.data()) x = rng() % p;
  return a;
}

// B for a 2x2 Laurent matrix with support [-2, 2] on the box [0, N).
Matrix<Rational> banded(int N) {
  RationalField q;
  CrossedProduct<RationalField> qz(q, Group::free_abelian(1));
  Matrix<CrossedProduct<RationalField>::Elem> a(2, 2, qz.zero());
  a(0, 0) = qz.parse("z^-2 - 3*z + 2");
  a(0, 1) = qz.parse("1 + z^2");
  a(1, 0) = qz.parse("2*z^-1 - z");
  a(1, 1) = qz.parse("z^2 - 1/2");
  return compress(qz, a, box_window(0, N, 1), field_rank(q)).B;
}

constexpr std::uint64_t kPrime = 4611686018427387847ULL;  // 2^62 - 57

void BM_RationalDense_Reference(benchmark::State& state) {
  auto a = dense_rational(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::rank_bareiss(a));
}

void BM_RationalDense_Parallel(benchmark::State& state) {
  auto a = dense_rational(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank_rational(a));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_RationalBanded_Reference(benchmark::State& state) {
  auto b = banded(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::rank_bareiss(b));
}

void BM_RationalBanded_Parallel(benchmark::State& state) {
  auto b = banded(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_rational(b));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_ModP_Reference(benchmark::State& state) {
  auto a = dense_mod_p(static_cast<std::size_t>(state.range(0)), kPrime, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::rank_mod_p(a, kPrime));
}

void BM_ModP_Parallel(benchmark::State& state) {
  auto a = dense_mod_p(static_cast<std::size_t>(state.range(0)), kPrime, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod_p(a, kPrime));
  state.counters["threads"] = omp_get_max_threads();
}

// Whole limit: steps of the schedule run in parallel.
void BM_LimitRank(benchmark::State& state) {
  RationalField q;
  CrossedProduct<RationalField> qz(q, Group::free_abelian(1));
  Matrix<CrossedProduct<RationalField>::Elem> a(2, 2, qz.zero());
  a(0, 0) = qz.parse("1 - z");
  a(0, 1) = qz.parse("z^-1 + 2");
  a(1, 0) = qz.parse("1 - z^2");
  a(1, 1) = qz.parse("z^-1 + 3 + 2*z");
  auto sched = parse_schedule("box:2^k,k=2..8", index_shape(qz));
  const int threads = static_cast<int>(state.range(0));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : state) benchmark::DoNotOptimize(limit_rank(qz, a, sched, field_rank(q)));
  omp_set_num_threads(saved);
  state.counters["threads"] = threads;
}

}  // namespace

BENCHMARK(BM_RationalDense_Reference)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RationalDense_Parallel)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RationalBanded_Reference)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RationalBanded_Parallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModP_Reference)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModP_Parallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LimitRank)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
