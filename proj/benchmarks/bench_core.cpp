// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "osrcbem/experiment.hpp"
#include "osrcbem/quadrature.hpp"

using namespace osrcbem;

namespace {

const Discretization& sphere(int divisions) {
  static std::map<int, Discretization> cache;
  auto it = cache.find(divisions);
  if (it == cache.end()) it = cache.emplace(divisions, discretize(make_sphere(1.0, divisions))).first;
  return it->second;
}

VectorC random_vector(Eigen::Index n) {
  std::mt19937 rng(1);
  std::normal_distribution<double> dist;
  VectorC v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(dist(rng), dist(rng));
  return v;
}

void BM_SauterSchwabRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sauter_schwab_rule(3, order));
}
BENCHMARK(BM_SauterSchwabRule)->Arg(4)->Arg(6)->Arg(8);

void BM_PairBlocksRegular(benchmark::State& state) {
  const auto& d = sphere(4);
  const int far = static_cast<int>(d.mesh.n_triangles()) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(pair_blocks(d.mesh, d.rwg, 0, far, kPi));
}
BENCHMARK(BM_PairBlocksRegular);

void BM_PairBlocksIdentical(benchmark::State& state) {
  const auto& d = sphere(4);
  for (auto _ : state) benchmark::DoNotOptimize(pair_blocks(d.mesh, d.rwg, 0, 0, kPi));
}
BENCHMARK(BM_PairBlocksIdentical);

void BM_SparseAssembly(benchmark::State& state) {
  const auto& d = sphere(static_cast<int>(state.range(0)));
  const auto kw = build_damped_wavenumber(kPi, estimate_curvature(d.mesh, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_sparse_set(d.mesh, d.topo, d.snc, d.p1, kw));
  state.SetLabel(std::to_string(d.rwg.n_dofs) + " edges");
}
BENCHMARK(BM_SparseAssembly)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PreconditionerSetup(benchmark::State& state) {
  const auto& d = sphere(16);
  const auto ops = osrc_operators(d, kPi, DampingSpec{1.0, {}});
  const int terms = static_cast<int>(state.range(0));
  const auto variant = terms == 0 ? OsrcVariant::B : OsrcVariant::A;
  const auto pade = terms == 0 ? PadeCoefficients{} : compute_pade(terms);
  for (auto _ : state) benchmark::DoNotOptimize(OsrcPreconditioner(ops, pade, variant));
}
BENCHMARK(BM_PreconditionerSetup)->Arg(0)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PreconditionerApply(benchmark::State& state) {
  const auto& d = sphere(16);
  const auto ops = osrc_operators(d, kPi, DampingSpec{1.0, {}});
  const int terms = static_cast<int>(state.range(0));
  const OsrcPreconditioner pre(ops, terms == 0 ? PadeCoefficients{} : compute_pade(terms),
                               terms == 0 ? OsrcVariant::B : OsrcVariant::A);
  const VectorC y = random_vector(static_cast<Eigen::Index>(pre.size()));
  for (auto _ : state) benchmark::DoNotOptimize(pre.apply(y));
}
BENCHMARK(BM_PreconditionerApply)->Arg(0)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EfieAssembly(benchmark::State& state) {
  const auto& d = sphere(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_efie(d.mesh, d.rwg, d.snc, kPi));
  state.SetLabel(std::to_string(d.rwg.n_dofs) + " dofs");
}
BENCHMARK(BM_EfieAssembly)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
