#include "e8/graded_algebra.hpp"
#include "e8/models.hpp"

#include <benchmark/benchmark.h>

using namespace e8;

namespace {

const GradedAlgebra& z5() {
    static GradedAlgebra a = assemble(model_spec(ModelId::Z5_2A4, canonical_scalars(ModelId::Z5_2A4)));
    return a;
}

JacobiOptions sampled(std::uint64_t n) {
    JacobiOptions o;
    o.mode = JacobiMode::Sampled;
    o.samples = n;
    return o;
}

void BM_JacobiReferenceSampled(benchmark::State& state) {
    auto opt = sampled(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_jacobi_reference(z5(), opt).passed);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_JacobiKernelSampled(benchmark::State& state) {
    auto opt = sampled(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_jacobi(z5(), opt).passed);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_JacobiKernelExhaustive(benchmark::State& state) {
    set_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_jacobi(z5()).passed);
    set_threads(0);
    state.SetItemsProcessed(state.iterations() * 2573000);
}

void BM_Assemble(benchmark::State& state) {
    auto id = static_cast<ModelId>(state.range(0));
    auto spec = model_spec(id, canonical_scalars(id));
    for (auto _ : state) benchmark::DoNotOptimize(assemble(spec).dim());
}

void BM_KillingMatrix(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(killing_matrix(z5()).size());
}

}  // namespace

BENCHMARK(BM_JacobiReferenceSampled)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiKernelSampled)->Arg(2000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiKernelExhaustive)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KillingMatrix)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
