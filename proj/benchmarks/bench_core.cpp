#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "harmonics/circle.hpp"
#include "harmonics/line.hpp"
#include "harmonics/metric.hpp"
#include "harmonics/series.hpp"

using namespace harmonics;

namespace {

CoeffSeq random_series(int degree) {
  std::mt19937_64 rng(degree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoeffSeq a(degree);
  for (int n = 0; n <= degree; ++n) a.set(n, cx{u(rng), u(rng)});
  return a;
}

void BM_cauchy_product(benchmark::State& state) {
  const CoeffSeq a = random_series(int(state.range(0)));
  const CoeffSeq b = random_series(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_product(a, b));
}
BENCHMARK(BM_cauchy_product)->Arg(16)->Arg(64)->Arg(256);

void BM_fourier_coefficient(benchmark::State& state) {
  const int m = int(state.range(0));
  const CircleGrid g = CircleGrid::sample(1, m, [](std::span<const double> th) {
    return cx{std::exp(std::cos(th[0])), 0.0};
  });
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficient(g, {5}));
}
BENCHMARK(BM_fourier_coefficient)->Arg(64)->Arg(256)->Arg(1024);

void BM_convolve_circle(benchmark::State& state) {
  const int m = int(state.range(0));
  const CircleGrid g = CircleGrid::sample(1, m, [](std::span<const double> th) {
    return std::polar(1.0, 3.0 * th[0]);
  });
  for (auto _ : state) benchmark::DoNotOptimize(convolve_circle(g, g));
}
BENCHMARK(BM_convolve_circle)->Arg(64)->Arg(256);

void BM_gaussian_transform(benchmark::State& state) {
  const LineFunction g = gaussian_line(1.0);
  const QuadSpec q = QuadSpec::with_tol(std::pow(10.0, -double(state.range(0))));
  double xi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier_transform(g, xi, q));
    xi = xi > 10.0 ? 0.0 : xi + 0.37;
  }
}
BENCHMARK(BM_gaussian_transform)->Arg(6)->Arg(9);

void BM_abel_inversion(benchmark::State& state) {
  const LineFunction g = gaussian_line(1.0);
  const QuadSpec q = QuadSpec::with_tol(1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(abel_invert(g, 0.5, 1e-3, q));
}
BENCHMARK(BM_abel_inversion);

void BM_lipschitz_regularize(benchmark::State& state) {
  const size_t n = size_t(state.range(0));
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  const FiniteMetricSpace m = FiniteMetricSpace::from_points(pts);
  std::vector<double> f(n);
  for (double& v : f) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_regularize(f, m, 2.0));
}
BENCHMARK(BM_lipschitz_regularize)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
