#include <benchmark/benchmark.h>

#include <vector>

#include "peridyn/force.hpp"

namespace {

using namespace peridyn;

DomainSpec plate(std::size_t n) {
  DomainSpec d;
  d.upper = {0.5, 0.5, 0.0};
  d.nx = d.ny = n;
  d.thickness = 0.0025;
  return d;
}

ForceModel gk(double dx, bool linear) {
  const ElasticMaterial m = ElasticMaterial::bond_based(2, 1.92e11, 8000.0, 0.0, 0.0025);
  return ForceModel::gaussian(m, GaussianInfluence::make(m, dx, 2, 36.0), linear);
}

void BM_NeighborList(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ForceModel model = gk(0.5 / static_cast<double>(n), true);
  for (auto _ : state) {
    Lattice lat = prepare_lattice(plate(n), model);
    benchmark::DoNotOptimize(lat.neighbors.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_NeighborList)->Arg(51)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool linear = state.range(1) != 0;
  const ForceModel model = gk(0.5 / static_cast<double>(n), linear);
  const Lattice lat = prepare_lattice(plate(n), model);
  const ForceAssembler assembler(lat, model);
  const BondHealth health(lat.bond_count());
  std::vector<Vec3> u(lat.node_count());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = lat.positions[i] * 1e-4;
  std::vector<Vec3> out(lat.node_count());
  for (auto _ : state) {
    assembler.assemble(u, {}, health, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lat.bond_count()));
}
BENCHMARK(BM_Assemble)
    ->Args({101, 0})
    ->Args({101, 1})
    ->Args({201, 0})
    ->Args({201, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
