#include <benchmark/benchmark.h>

#include <random>

#include "alphaleak/leakage.hpp"
#include "alphaleak/measures.hpp"
#include "alphaleak/oracle.hpp"

using namespace alphaleak;

namespace {

ProbVec make_pmf(std::size_t n) {
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> m(n);
  double total = 0.0;
  for (auto& v : m) total += (v = exp1(rng) + 1e-6);
  for (auto& v : m) v /= total;
  return ProbVec::validate(m);
}

Channel make_channel(std::size_t nx, std::size_t ny) {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<std::vector<double>> rows(nx, std::vector<double>(ny));
  for (auto& row : rows) {
    double total = 0.0;
    for (auto& v : row) total += (v = exp1(rng) + 1e-6);
    for (auto& v : row) v /= total;
  }
  return Channel::validate(rows);
}

void BM_Entropy(benchmark::State& state) {
  const ProbVec p = make_pmf(state.range(0));
  const Order a = Order::finite(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_entropy(p, a));
  }
}
BENCHMARK(BM_Entropy)->Arg(16)->Arg(256)->Arg(4096);

void BM_Tilt(benchmark::State& state) {
  const ProbVec p = make_pmf(state.range(0));
  const Order a = Order::finite(10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tilt(p, a));
  }
}
BENCHMARK(BM_Tilt)->Arg(16)->Arg(256)->Arg(4096);

void BM_CrossEntropy(benchmark::State& state) {
  const ProbVec p = make_pmf(state.range(0));
  const ProbVec q = tilt(p, Order::finite(2));
  const Order a = Order::finite(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_entropy(p, q, a));
  }
}
BENCHMARK(BM_CrossEntropy)->Arg(16)->Arg(256)->Arg(4096);

void BM_AlphaLeakage(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ProbVec p = make_pmf(n);
  const Channel ch = make_channel(n, n);
  const Order a = Order::finite(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_leakage(p, ch, a));
  }
}
BENCHMARK(BM_AlphaLeakage)->Arg(4)->Arg(16)->Arg(64);

void BM_SibsonMI(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ProbVec p = make_pmf(n);
  const Channel ch = make_channel(n, n);
  const Order a = Order::finite(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sibson_mi(p, ch, a));
  }
}
BENCHMARK(BM_SibsonMI)->Arg(4)->Arg(16)->Arg(64);

void BM_GridMin(benchmark::State& state) {
  const ProbVec p = make_pmf(4);
  const Order a = Order::finite(2);
  const GridSpec grid{4, static_cast<std::size_t>(state.range(0)),
                      10'000'000'000ULL};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplex_grid_min(p, a, grid));
  }
}
BENCHMARK(BM_GridMin)->Arg(100)->Arg(400);

void BM_GradientMin(benchmark::State& state) {
  const ProbVec p = make_pmf(state.range(0));
  const Order a = Order::finite(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(projected_gradient_min(p, a, 1e-10));
  }
}
BENCHMARK(BM_GradientMin)->Arg(4)->Arg(16);

void BM_Capacity(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const Channel ch = make_channel(n, n);
  const Order a = Order::finite(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(renyi_capacity(ch, a));
  }
}
BENCHMARK(BM_Capacity)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
