// Microbenchmarks for the polarization tensor and reflection layers.

#include "casimir/graphene.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

#include <benchmark/benchmark.h>

using namespace casimir;
using graphene::GrapheneSheet;
using graphene::TensorRoute;

namespace {

const GrapheneSheet kSheet{0.29, 0.24, 1.0 / 300.0};
constexpr double kRoomT = 294.0;

void BM_pt_order0(benchmark::State& state) {
    const auto ctx = graphene::make_context(3, kRoomT, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(graphene::pt_order0(ctx, kSheet));
}
BENCHMARK(BM_pt_order0);

void BM_pt_thermal(benchmark::State& state) {
    const auto ctx = graphene::make_context(static_cast<int>(state.range(0)),
                                            kRoomT, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(graphene::pt_thermal(ctx, kSheet, 1e-9));
}
BENCHMARK(BM_pt_thermal)->Arg(1)->Arg(10)->Arg(100);

void BM_pt_l0(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(graphene::pt_l0(0.01, kSheet, kRoomT, 1e-9));
}
BENCHMARK(BM_pt_l0);

void BM_approx_bracket(benchmark::State& state) {
    const auto ctx = graphene::make_context(1, kRoomT, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            graphene::approx_bracket(ctx.xi_ev, kRoomT, kSheet, 1e-9));
}
BENCHMARK(BM_approx_bracket);

void BM_pt_zero_temperature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(graphene::pt_zero_temperature(0.1, 0.01, kSheet));
}
BENCHMARK(BM_pt_zero_temperature);

void BM_fresnel_gold(benchmark::State& state) {
    const auto gold = materials::PermittivityModel::drude(9.0, 0.035);
    const auto ctx = graphene::make_context(5, kRoomT, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(reflection::fresnel(ctx, gold));
}
BENCHMARK(BM_fresnel_gold);

void BM_dressed_reflection(benchmark::State& state) {
    const auto silica = materials::PermittivityModel::oscillators(
        {{1.703, 0.1237, 0.0}, {1.098, 13.38, 0.0}});
    const auto plate = reflection::BoundarySpec::coated(silica, kSheet);
    const auto ctx = graphene::make_context(static_cast<int>(state.range(0)),
                                            kRoomT, 0.01);
    for (auto _ : state)
        benchmark::DoNotOptimize(reflection::boundary_reflection(
            ctx, plate, TensorRoute::thermal_approx));
}
BENCHMARK(BM_dressed_reflection)->Arg(0)->Arg(1)->Arg(50);

} // namespace

BENCHMARK_MAIN();
