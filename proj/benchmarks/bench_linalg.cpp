#include <benchmark/benchmark.h>

#include <random>

#include "signet/linalg.hpp"

using namespace signet;

namespace {

SymMatrix random_spd(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = u(rng);
  Matrix s = r * r.transpose();
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.5;
  return SymMatrix(s);
}

void BM_SymEigen(benchmark::State& state) {
  const SymMatrix a = random_spd(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(a));
}
BENCHMARK(BM_SymEigen)->Arg(3)->Arg(9)->Arg(21)->Arg(42);

void BM_Cholesky(benchmark::State& state) {
  const SymMatrix a = random_spd(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(cholesky(a));
}
BENCHMARK(BM_Cholesky)->Arg(3)->Arg(21)->Arg(42);

void BM_HurwitzCertificate(benchmark::State& state) {
  const Matrix a = -1.0 * random_spd(static_cast<std::size_t>(state.range(0)), 3).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(is_hurwitz(a));
}
BENCHMARK(BM_HurwitzCertificate)->Arg(6)->Arg(12)->Arg(21);

}  // namespace
