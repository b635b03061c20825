#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hypfol/corpus.hpp"
#include "hypfol/grid_domain.hpp"
#include "hypfol/kernels.hpp"

namespace {

using namespace hypfol;

struct DiscProblem {
  std::vector<CellRole> role;
  std::vector<double> u;
  LiouvilleGrid grid;

  explicit DiscProblem(int n) {
    const GridDomain d = GridDomain::disc(0.0, 1.0, n);
    role.assign(static_cast<std::size_t>(n) * n, CellRole::outside);
    u.assign(role.size(), 0.0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (!d.inside(r, c)) continue;
        const std::size_t i = d.index(r, c);
        role[i] = d.is_interior(r, c) ? CellRole::unknown : CellRole::fixed;
        u[i] = std::log(2.0 / (1.0 - std::norm(d.center(r, c))));
      }
    grid = {n, n, d.spacing(), role};
  }
};

template <double (*Residual)(const LiouvilleGrid&, std::span<const double>, std::span<double>)>
void BM_Residual(benchmark::State& state) {
  DiscProblem p(static_cast<int>(state.range(0)));
  std::vector<double> out(p.u.size());
  for (auto _ : state) benchmark::DoNotOptimize(Residual(p.grid, p.u, out));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.u.size()));
}

template <void (*Sweep)(const LiouvilleGrid&, std::span<double>)>
void BM_Sweep(benchmark::State& state) {
  DiscProblem p(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Sweep(p.grid, p.u);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.u.size()));
}

template <double (*Directed)(std::span<const Complex>, std::span<const Complex>)>
void BM_Hausdorff(benchmark::State& state) {
  Rng rng(11);
  std::vector<Complex> a(static_cast<std::size_t>(state.range(0))), b(a.size());
  for (auto& z : a) z = random_in_disc(rng);
  for (auto& z : b) z = random_in_disc(rng, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(Directed(a, b));
}

}  // namespace

BENCHMARK(BM_Residual<serial::liouville_residual>)->Name("residual/serial")->Arg(257)->Arg(513);
BENCHMARK(BM_Residual<parallel::liouville_residual>)->Name("residual/parallel")->Arg(257)->Arg(513);
BENCHMARK(BM_Sweep<serial::liouville_sweep>)->Name("sweep/serial")->Arg(257)->Arg(513);
BENCHMARK(BM_Sweep<parallel::liouville_sweep>)->Name("sweep/parallel")->Arg(257)->Arg(513);
BENCHMARK(BM_Hausdorff<serial::directed_hausdorff>)->Name("hausdorff/serial")->Arg(2000)->Arg(8000);
BENCHMARK(BM_Hausdorff<parallel::directed_hausdorff>)->Name("hausdorff/parallel")->Arg(2000)->Arg(8000);

BENCHMARK_MAIN();
