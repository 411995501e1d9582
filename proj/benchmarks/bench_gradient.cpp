// End-to-end gradient benchmarks at coarse tolerance.

#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

#include <benchmark/benchmark.h>

using namespace casimir;
using graphene::TensorRoute;
using reflection::BoundarySpec;

namespace {

constexpr double kRadiusNm = 60.35e3;
constexpr double kRoomT = 294.0;

lifshitz::SummationPolicy coarse() {
    lifshitz::SummationPolicy p;
    p.rel_tol = 1e-5;
    p.quadrature_tol = 1e-7;
    return p;
}

BoundarySpec lab_plate() {
    return BoundarySpec::coated(
        materials::PermittivityModel::oscillators(
            {{1.703, 0.1237, 0.0}, {1.098, 13.38, 0.0}}),
        {0.29, 0.24, 1.0 / 300.0});
}

BoundarySpec gold_sphere() {
    return BoundarySpec::bare(materials::PermittivityModel::drude(9.0, 0.035));
}

void BM_gradient_approx(benchmark::State& state) {
    const auto plate = lab_plate();
    const auto sphere = gold_sphere();
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(lifshitz::gradient_finite_T(
            {kRadiusNm, a}, plate, sphere, kRoomT, coarse(),
            TensorRoute::thermal_approx));
}
BENCHMARK(BM_gradient_approx)->Arg(250)->Arg(700)->Unit(benchmark::kMillisecond);

void BM_gradient_zero_T(benchmark::State& state) {
    const auto plate = lab_plate();
    const auto sphere = gold_sphere();
    for (auto _ : state)
        benchmark::DoNotOptimize(lifshitz::gradient_zero_T(
            {kRadiusNm, 250.0}, plate, sphere, coarse()));
}
BENCHMARK(BM_gradient_zero_T)->Unit(benchmark::kMillisecond);

void BM_gradient_ideal(benchmark::State& state) {
    const auto ideal = BoundarySpec::ideal_metal();
    for (auto _ : state)
        benchmark::DoNotOptimize(lifshitz::gradient_finite_T(
            {kRadiusNm, 250.0}, ideal, ideal, kRoomT, coarse()));
}
BENCHMARK(BM_gradient_ideal)->Unit(benchmark::kMillisecond);

void BM_pressure_plate_plate(benchmark::State& state) {
    const auto plate = lab_plate();
    const auto gold = gold_sphere();
    for (auto _ : state)
        benchmark::DoNotOptimize(lifshitz::pressure_plate_plate(
            plate, gold, 1000.0, kRoomT, coarse(), TensorRoute::thermal_approx));
}
BENCHMARK(BM_pressure_plate_plate)->Unit(benchmark::kMillisecond);

} // namespace
