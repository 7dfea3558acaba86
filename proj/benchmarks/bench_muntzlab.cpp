#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "muntzlab/exponents.hpp"
#include "muntzlab/measures.hpp"
#include "muntzlab/muntz_poly.hpp"
#include "muntzlab/operators.hpp"
#include "muntzlab/special_functions.hpp"
#include "muntzlab/typeconst.hpp"

namespace {

using namespace muntzlab;

BlockPartition singleton_partition(std::size_t count) {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, count);
    std::vector<std::size_t> sizes(count, 1);
    return BlockPartition(std::move(seq), std::move(sizes), 1.5);
}

MuntzPolynomial alternating_poly(std::size_t terms) {
    std::vector<MuntzPolynomial::Term> t;
    double lam = 1.0;
    for (std::size_t k = 0; k < terms; ++k, lam *= 2.0)
        t.push_back({lam, (k % 2 == 0) ? 1.0 : -0.75});
    return MuntzPolynomial(std::move(t));
}

void BM_MonomialNorm(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(monomial_lp_norm(1e6, 2.0, 0.5));
}
BENCHMARK(BM_MonomialNorm);

void BM_LpNormQuadrature(benchmark::State& state) {
    const MuntzPolynomial f = alternating_poly(static_cast<std::size_t>(state.range(0)));
    const Measure mu = Measure::jacobi(1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(lp_norm(f, 1.7, mu));
}
BENCHMARK(BM_LpNormQuadrature)->Arg(4)->Arg(8)->Arg(16);

void BM_SupNorm(benchmark::State& state) {
    const MuntzPolynomial f = alternating_poly(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sup_norm(f));
}
BENCHMARK(BM_SupNorm)->Arg(8)->Arg(16);

void BM_KernelApply(benchmark::State& state) {
    const std::size_t blocks = static_cast<std::size_t>(state.range(0));
    BlockPartition part = singleton_partition(blocks);
    const KernelOperator T = make_example_supercritical(part, 1.5, 0.5, 1.0);
    std::vector<MuntzPolynomial::Term> t;
    for (std::size_t k = 0; k < blocks; ++k)
        t.push_back({part.sequence().values()[k], 1.0 / static_cast<double>(k + 1)});
    const MuntzPolynomial f{std::move(t)};
    for (auto _ : state)
        benchmark::DoNotOptimize(T.apply(f));
}
BENCHMARK(BM_KernelApply)->Arg(16)->Arg(64);

void BM_RestrictedStrongSingleton(benchmark::State& state) {
    BlockPartition part = singleton_partition(12);
    const InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    const OperatorFn id = as_operator(identity_kernel(part.sequence()));
    for (auto _ : state)
        benchmark::DoNotOptimize(restricted_strong_constant(id, 6, 2.0, cfg));
}
BENCHMARK(BM_RestrictedStrongSingleton);

void BM_RestrictedWeakSingleton(benchmark::State& state) {
    BlockPartition part = singleton_partition(12);
    const InterpolationConfig cfg(part, 1.5, 4.0, 2.0, 1.0, 1.0, Measure::jacobi(1.0));
    const OperatorFn id = as_operator(identity_kernel(part.sequence()));
    for (auto _ : state)
        benchmark::DoNotOptimize(restricted_weak_constant(id, 6, 1.5, cfg));
}
BENCHMARK(BM_RestrictedWeakSingleton);

void BM_DecouplingRatio(benchmark::State& state) {
    BlockPartition part = singleton_partition(12);
    for (auto _ : state)
        benchmark::DoNotOptimize(decoupling_ratio(part, 2.0, 1.0, 16, 0x5eed, 6));
}
BENCHMARK(BM_DecouplingRatio);

void BM_DeltaLemmaWindow(benchmark::State& state) {
    ExponentSequence seq = ExponentSequence::geometric(2.0, 2.0, 32);
    std::vector<double> eps(32);
    for (std::size_t k = 0; k < 32; ++k) eps[k] = std::pow(0.5, static_cast<double>(k));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            delta_lemma_check(seq, eps, 3, 1.0, 0.5, 0.5, 2, 16, TailDirection::Above));
}
BENCHMARK(BM_DeltaLemmaWindow);

}  // namespace

BENCHMARK_MAIN();
