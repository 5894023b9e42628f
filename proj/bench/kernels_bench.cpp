#include <benchmark/benchmark.h>

#include <random>

#include "catron/analytic.hpp"
#include "catron/fock.hpp"
#include "catron/kernels.hpp"

using namespace catron;

namespace {

const ModelParams kParams = make_params(10.0, 7.0, 1.0);

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

PhaseGrid grid_of(std::size_t n) { return make_grid(GridBounds{}, n, n); }

std::vector<cplx> random_density(std::size_t N) {
  std::mt19937_64 g(7);
  std::normal_distribution<double> d;
  Matrix A(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) A(i, j) = cplx(d(g), d(g));
  Matrix rho = A * A.adjoint();
  rho /= rho.trace();
  return {rho.data(), rho.data() + N * N};
}

void BM_ExactWigner(benchmark::State& state) {
  const PhaseGrid grid = grid_of(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(neg_log_wigner_exact(grid, kParams, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_FockWigner(benchmark::State& state) {
  const std::size_t N = 40;
  const auto rho = random_density(N);
  const PhaseGrid grid = grid_of(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_fock_kernel(rho, N, grid, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_WignerEom(benchmark::State& state) {
  const PhaseGrid grid = grid_of(static_cast<std::size_t>(state.range(1)));
  std::vector<double> W;
  fill_grid(grid, W, [&](std::size_t i, std::size_t j) { return std::exp(-std::norm(grid.alpha(i, j))); });
  for (auto _ : state) benchmark::DoNotOptimize(wigner_eom_kernel(W, grid, kParams, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

void BM_Liouvillian(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(kParams, N, kMaxCutoff, exec_of(state)));
}

}  // namespace

// First argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_ExactWigner)->ArgsProduct({{0, 1}, {121, 241}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FockWigner)->ArgsProduct({{0, 1}, {121}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerEom)->ArgsProduct({{0, 1}, {241, 481}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Liouvillian)->ArgsProduct({{0, 1}, {30, 60}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
