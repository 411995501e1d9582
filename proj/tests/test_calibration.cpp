#include "casimir/calibration.hpp"

#include "casimir/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace casimir;
using namespace casimir::calibration;

namespace {

constexpr double kRadiusNm = 60.14e3;

} // namespace

TEST_SUITE("calibration") {

TEST_CASE("electrostatic factor against the capacitance oracle") {
    for (double a : {50.0, 236.9, 800.0, 3000.0}) {
        const double got = electrostatic_gradient_factor(a, kRadiusNm);
        const double ref = testsupport::xprime_fd_ref(a, kRadiusNm);
        CHECK(got == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("electrostatic factor scaling and monotonicity") {
    // X' has dimensions of capacitance per length squared: doubling every
    // length halves it.
    const double x1 = electrostatic_gradient_factor(200.0, kRadiusNm);
    const double x2 = electrostatic_gradient_factor(400.0, 2.0 * kRadiusNm);
    CHECK(x2 == doctest::Approx(0.5 * x1).epsilon(1e-9));
    double prev = 1e300;
    for (double a : {60.0, 120.0, 240.0, 480.0, 960.0}) {
        const double x = electrostatic_gradient_factor(a, kRadiusNm);
        CHECK(x > 0.0);
        CHECK(x < prev);
        prev = x;
    }
    CHECK_THROWS(electrostatic_gradient_factor(0.0, kRadiusNm));
    CHECK_THROWS(electrostatic_gradient_factor(100.0, 0.0));
}

TEST_CASE("forward model: parabola in voltage with vertex at V0") {
    const double a = 250.0, v0 = 0.1324, c = 4.599e5, fp = 1.2e-4;
    const double at_v0 = frequency_shift_forward(a, kRadiusNm, v0, v0, c, fp);
    CHECK(at_v0 == doctest::Approx(-c * fp).epsilon(1e-12));
    // Symmetric about the vertex.
    const double up = frequency_shift_forward(a, kRadiusNm, v0 + 0.05, v0, c, fp);
    const double dn = frequency_shift_forward(a, kRadiusNm, v0 - 0.05, v0, c, fp);
    CHECK(up == doctest::Approx(dn).epsilon(1e-12));
    CHECK(up < at_v0); // more negative away from the vertex
    // Direct substitution.
    const double x = electrostatic_gradient_factor(a, kRadiusNm);
    CHECK(up == doctest::Approx(-c * (x * 0.05 * 0.05 + fp)).epsilon(1e-12));
}

TEST_CASE("noise-free round trip recovers the generator") {
    const auto data = testsupport::SyntheticCalibration{}.make(kRadiusNm, 0.0, 1u, 1);
    const auto fit = fit_calibration(data, kRadiusNm);
    CHECK(fit.v0_v == doctest::Approx(0.1324).epsilon(1e-6));
    CHECK(fit.z0_nm == doctest::Approx(236.9).epsilon(1e-6));
    CHECK(fit.c_s_per_kg == doctest::Approx(4.599e5).epsilon(1e-6));
    // No baked-in distance dependence of the residual potential.
    CHECK(std::abs(fit.line_theta_v_per_nm) < 1e-9);
    CHECK(fit.line_d_v == doctest::Approx(0.1324).epsilon(1e-6));
}

TEST_CASE("noisy single-set fit lands within the quoted errors") {
    const auto data =
        testsupport::SyntheticCalibration{}.make(kRadiusNm, 55.3e-3, 42u, 1);
    const auto fit = fit_calibration(data, kRadiusNm);
    CHECK(std::abs(fit.v0_v - 0.1324) < 3.0 * 2e-4);
    CHECK(std::abs(fit.z0_nm - 236.9) < 3.0 * 0.6);
    CHECK(std::abs(fit.c_s_per_kg - 4.599e5) < 3.0 * 0.012e5);
    CHECK(fit.v0_err_v > 0.0);
    CHECK(fit.z0_err_nm > 0.0);
    CHECK(fit.c_err > 0.0);
}

TEST_CASE("extraction inverts the forward model exactly without noise") {
    testsupport::SyntheticCalibration gen;
    const auto data = gen.make(kRadiusNm, 0.0, 7u, 1);
    const auto fit = fit_calibration(data, kRadiusNm);
    const auto samples = extract_casimir(data, fit, kRadiusNm);
    CHECK(samples.size() == 21); // one per piezo position
    for (const auto& s : samples) {
        const double expected = gen.casimir_n_per_m(s.a_nm) * 1e6; // uN/m
        CHECK(s.gradient_un_per_m == doctest::Approx(expected).epsilon(1e-9));
        CHECK(s.err_a_nm == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(s.err_gradient_un_per_m > 0.0);
    }
    // Separations ascend and equal z_piezo + z0.
    CHECK(std::is_sorted(samples.begin(), samples.end(),
                         [](const auto& p, const auto& q) { return p.a_nm < q.a_nm; }));
    CHECK(samples.front().a_nm == doctest::Approx(13.1 + 236.9).epsilon(1e-6));
}

TEST_CASE("two sets average their overlap") {
    testsupport::SyntheticCalibration gen;
    auto data = gen.make(kRadiusNm, 20e-3, 3u, 1);
    const auto more = gen.make(kRadiusNm, 20e-3, 4u, 2);
    data.insert(data.end(), more.begin(), more.end());
    const auto fit = fit_calibration(data, kRadiusNm);
    const auto samples = extract_casimir(data, fit, kRadiusNm);
    CHECK(samples.size() == 21);
    // The combined gradient is the across-set mean and the error stays
    // between the per-set errors (sets may share systematics, so no 1/sqrt(n)
    // claim is made).
    std::vector<calibration::ShiftRecord> only1, only2;
    for (const auto& r : data)
        (r.set_id == 1 ? only1 : only2).push_back(r);
    const auto e1 = extract_casimir(only1, fit, kRadiusNm);
    const auto e2 = extract_casimir(only2, fit, kRadiusNm);
    REQUIRE(e1.size() == samples.size());
    REQUIRE(e2.size() == samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        const double avg = 0.5 * (e1[i].gradient_un_per_m + e2[i].gradient_un_per_m);
        CHECK(samples[i].gradient_un_per_m == doctest::Approx(avg).epsilon(1e-9));
        const double lo = std::min(e1[i].err_gradient_un_per_m,
                                   e2[i].err_gradient_un_per_m);
        const double hi = std::max(e1[i].err_gradient_un_per_m,
                                   e2[i].err_gradient_un_per_m);
        CHECK(samples[i].err_gradient_un_per_m >= lo - 1e-12);
        CHECK(samples[i].err_gradient_un_per_m <= hi + 1e-12);
    }
}

TEST_CASE("vertex location is immune to a constant shift offset") {
    // Adding a separation-independent constant to every record changes the
    // apparent Casimir signal, not the fitted V0 or z0 (model-free mode).
    testsupport::SyntheticCalibration gen;
    auto data = gen.make(kRadiusNm, 0.0, 1u, 1);
    auto shifted = data;
    for (auto& rec : shifted) rec.delta_omega_rad_s -= 3.0;
    const auto fit0 = fit_calibration(data, kRadiusNm);
    const auto fit1 = fit_calibration(shifted, kRadiusNm);
    CHECK(fit1.v0_v == doctest::Approx(fit0.v0_v).epsilon(1e-10));
    CHECK(fit1.z0_nm == doctest::Approx(fit0.z0_nm).epsilon(1e-7));
    CHECK(fit1.c_s_per_kg == doctest::Approx(fit0.c_s_per_kg).epsilon(1e-7));
}

TEST_CASE("joint mode agrees with model-free mode on clean data") {
    testsupport::SyntheticCalibration gen;
    const auto data = gen.make(kRadiusNm, 0.0, 1u, 1);
    FitOptions joint;
    joint.casimir_model_free = false;
    const auto fit = fit_calibration(data, kRadiusNm, joint);
    CHECK(fit.v0_v == doctest::Approx(0.1324).epsilon(1e-6));
    CHECK(fit.z0_nm == doctest::Approx(236.9).epsilon(1e-5));
    CHECK(fit.c_s_per_kg == doctest::Approx(4.599e5).epsilon(1e-5));
}

TEST_CASE("random generator parameters round-trip") {
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> v0d(-0.3, 0.3), z0d(120.0, 420.0),
        cd(2e5, 8e5);
    for (int trial = 0; trial < 50; ++trial) {
        testsupport::SyntheticCalibration gen;
        gen.v0_v = v0d(rng);
        gen.z0_nm = z0d(rng);
        gen.c_s_per_kg = cd(rng);
        const auto data = gen.make(kRadiusNm, 0.0, 1000u + trial, 1);
        const auto fit = fit_calibration(data, kRadiusNm);
        CHECK(fit.v0_v == doctest::Approx(gen.v0_v).epsilon(1e-5));
        CHECK(fit.z0_nm == doctest::Approx(gen.z0_nm).epsilon(1e-4));
        CHECK(fit.c_s_per_kg == doctest::Approx(gen.c_s_per_kg).epsilon(1e-5));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    testsupport::SyntheticCalibration gen;
    auto data = gen.make(kRadiusNm, 0.0, 1u, 1);
    // Too few separations.
    std::vector<ShiftRecord> few(data.begin(), data.begin() + 36);
    CHECK_THROWS_AS(fit_calibration(few, kRadiusNm), ConfigError);
    // Too few distinct voltages at each separation.
    std::vector<ShiftRecord> twov;
    for (const auto& r : data)
        if (r.voltage_v < 0.095) twov.push_back(r);
    CHECK_THROWS_AS(fit_calibration(twov, kRadiusNm), ConfigError);
    CHECK_THROWS(fit_calibration({}, kRadiusNm));
}

} // TEST_SUITE
