#include <benchmark/benchmark.h>

#include "shc/diag_correct.hpp"
#include "shc/harness.hpp"
#include "shc/linalg.hpp"
#include "shc/sh_correct.hpp"
#include "shc/strong_sh.hpp"

using namespace shc;

namespace {

Instance instance(Family f, benchmark::State& state) { return gen_instance(f, static_cast<std::size_t>(state.range(0)), 17); }

std::vector<double> perturbed(const Instance& inst, double eps) {
    Rng rng(17);
    return inst.perturbed(inst.direction(PerturbationStyle::Generic, rng), eps);
}

}  // namespace

static void BM_EigSym(benchmark::State& state) {
    const auto inst = instance(Family::Irreducible, state);
    for (auto _ : state) benchmark::DoNotOptimize(eig_sym(inst.a));
}
BENCHMARK(BM_EigSym)->RangeMultiplier(2)->Range(4, 32);

static void BM_EigHermitian(benchmark::State& state) {
    const auto inst = instance(Family::HermitianIrreducible, state);
    for (auto _ : state) benchmark::DoNotOptimize(eig_sym(inst.a));
}
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(4, 32);

static void BM_CorrectDiagonal(benchmark::State& state) {
    const auto inst = instance(Family::DiagonalDistinct, state);
    const auto lt = perturbed(inst, 1e-4);
    const auto d = inst.a.diagonal_entries();
    for (auto _ : state) benchmark::DoNotOptimize(correct_diagonal(d, lt));
}
BENCHMARK(BM_CorrectDiagonal)->RangeMultiplier(2)->Range(4, 64);

static void BM_CorrectIrreducible(benchmark::State& state) {
    const auto inst = instance(Family::Irreducible, state);
    const auto lt = perturbed(inst, 1e-4);
    for (auto _ : state) benchmark::DoNotOptimize(correct_irreducible(inst.a, lt));
}
BENCHMARK(BM_CorrectIrreducible)->RangeMultiplier(2)->Range(4, 32);

static void BM_BlockDecompose(benchmark::State& state) {
    const auto inst = instance(Family::MixedBlock, state);
    for (auto _ : state) benchmark::DoNotOptimize(block_decompose(inst.a));
}
BENCHMARK(BM_BlockDecompose)->RangeMultiplier(2)->Range(4, 32);

static void BM_SchurHornCorrect(benchmark::State& state) {
    const auto inst = instance(Family::MixedBlock, state);
    const auto lt = perturbed(inst, 1e-4);
    for (auto _ : state) benchmark::DoNotOptimize(schur_horn_correct(inst.a, lt));
}
BENCHMARK(BM_SchurHornCorrect)->RangeMultiplier(2)->Range(4, 32);

static void BM_SchurHornCorrectHermitian(benchmark::State& state) {
    const auto inst = instance(Family::HermitianMixedBlock, state);
    const auto lt = perturbed(inst, 1e-4);
    for (auto _ : state) benchmark::DoNotOptimize(schur_horn_correct_hermitian(inst.a, lt));
}
BENCHMARK(BM_SchurHornCorrectHermitian)->RangeMultiplier(2)->Range(4, 32);

static void BM_EpsilonSweep(benchmark::State& state) {
    SweepConfig cfg;
    cfg.family = Family::MixedBlock;
    cfg.n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(epsilon_sweep(cfg));
}
BENCHMARK(BM_EpsilonSweep)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
