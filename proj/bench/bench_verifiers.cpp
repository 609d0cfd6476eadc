// Serial reference path against the OpenMP path for the index-loop verifiers.
// Arg 0 is serial, 1 is parallel.

#include <benchmark/benchmark.h>

#include "jetlie/bialgebra.hpp"
#include "jetlie/quantum.hpp"

using namespace jetlie;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "parallel" : "serial"); }

void BM_Jacobi(benchmark::State& st) {
    PoissonStructure w = build_omega(phi_power_family(2), 7, 1);
    for (auto _ : st) benchmark::DoNotOptimize(verify_jacobi(w, exec_of(st)));
    label(st);
}

void BM_Multiplicativity(benchmark::State& st) {
    PoissonStructure w = build_omega(phi_power_family(2), 5, 1);
    for (auto _ : st) benchmark::DoNotOptimize(verify_multiplicativity(w, exec_of(st)));
    label(st);
}

void BM_Cojacobi(benchmark::State& st) {
    WedgeCochain a = coboundary(rmatrix_from_phi(phi_power_family(2), 13));
    for (auto _ : st) benchmark::DoNotOptimize(verify_cojacobi(a, 12, exec_of(st)));
    label(st);
}

void BM_Cybe(benchmark::State& st) {
    RMatrix r = rmatrix_from_phi(phi_power_family(2), 14);
    for (auto _ : st) benchmark::DoNotOptimize(verify_cybe(r, 12, exec_of(st)));
    label(st);
}

void BM_Overlap(benchmark::State& st) {
    RelationSet R = relation_set_catalog(QuantumSet::R2, {}, -1, true);
    for (auto _ : st) benchmark::DoNotOptimize(pbw_overlap_check(R, exec_of(st)));
    label(st);
}

void BM_Delta(benchmark::State& st) {
    RelationSet R = relation_set_catalog(QuantumSet::R2, {}, -1, true);
    for (auto _ : st) benchmark::DoNotOptimize(verify_delta_homomorphism(R, exec_of(st)));
    label(st);
}

}  // namespace

BENCHMARK(BM_Jacobi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Multiplicativity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Cojacobi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Cybe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Overlap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Delta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
