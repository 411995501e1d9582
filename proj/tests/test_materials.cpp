#include "casimir/materials.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using casimir::materials::Oscillator;
using casimir::materials::PermittivityModel;

TEST_SUITE("materials") {

TEST_CASE("vacuum is exactly one") {
    const auto m = PermittivityModel::vacuum();
    for (double xi : {0.0, 1e-4, 1.0, 1e3}) CHECK(m.eps(xi) == 1.0);
}

TEST_CASE("drude value at the plasma energy") {
    const auto m = PermittivityModel::drude(9.0, 0.035);
    CHECK(m.eps(9.0) == doctest::Approx(1.0 + 81.0 / (9.0 * 9.035)).epsilon(1e-12));
    CHECK(m.is_metal());
}

TEST_CASE("plasma transparency at high frequency") {
    const auto m = PermittivityModel::plasma(9.0);
    CHECK(m.eps(1e4) == doctest::Approx(1.0 + 8.1e-7).epsilon(1e-9));
}

TEST_CASE("drude zero-frequency cap") {
    const auto m = PermittivityModel::drude(9.0, 0.035);
    CHECK(m.eps(0.0) == casimir::materials::kZeroFrequencyCap);
    CHECK(m.zero_mode_eps_xi2() == 0.0);
}

TEST_CASE("plasma keeps the TE zero-mode residue") {
    const auto m = PermittivityModel::plasma(9.0);
    CHECK(m.zero_mode_eps_xi2() == doctest::Approx(81.0).epsilon(1e-12));
}

TEST_CASE("oscillator static value for the stock silica parameters") {
    const auto m = PermittivityModel::oscillators(
        {Oscillator{1.703, 0.1237, 0.0}, Oscillator{1.098, 13.38, 0.0}});
    CHECK(m.eps(0.0) == doctest::Approx(3.801).epsilon(1e-12));
    CHECK_FALSE(m.is_metal());
}

TEST_CASE("all kinds: eps >= 1 and finite over the working range") {
    std::vector<PermittivityModel> models;
    models.push_back(PermittivityModel::vacuum());
    models.push_back(PermittivityModel::drude(9.0, 0.035));
    models.push_back(PermittivityModel::plasma(9.0));
    models.push_back(PermittivityModel::oscillators(
        {Oscillator{1.703, 0.1237, 0.0}, Oscillator{1.098, 13.38, 0.05}}));
    models.push_back(PermittivityModel::tabulated(
        {{1e-4, 100.0}, {1e-2, 10.0}, {1.0, 3.0}, {1e3, 1.0}}));
    for (const auto& m : models) {
        for (double t = -4.0; t <= 3.0; t += 0.25) {
            const double e = m.eps(std::pow(10.0, t));
            CHECK(std::isfinite(e));
            CHECK(e >= 1.0);
        }
    }
}

TEST_CASE("monotone non-increasing for the analytic kinds") {
    std::vector<PermittivityModel> models;
    models.push_back(PermittivityModel::drude(9.0, 0.035));
    models.push_back(PermittivityModel::plasma(9.0));
    models.push_back(PermittivityModel::oscillators(
        {Oscillator{1.703, 0.1237, 0.0}, Oscillator{1.098, 13.38, 0.0}}));
    for (const auto& m : models) {
        double prev = m.eps(1e-4);
        for (double t = -3.75; t <= 3.0; t += 0.25) {
            const double e = m.eps(std::pow(10.0, t));
            CHECK(e <= prev * (1.0 + 1e-12));
            prev = e;
        }
    }
}

TEST_CASE("drude and plasma agree at large frequency") {
    // The guaranteed bound at xi = 100*gamma is ~1/101; the 0.5% level is
    // reached with margin by 300*gamma.
    const auto d = PermittivityModel::drude(9.0, 0.035);
    const auto p = PermittivityModel::plasma(9.0);
    for (double xi = 100.0 * 0.035; xi <= 1e3; xi *= 1.7) {
        const double rel = std::abs(d.eps(xi) - p.eps(xi)) / (p.eps(xi) - 1.0 + 1e-300);
        CHECK(rel < 1.0e-2);
        if (xi >= 300.0 * 0.035) CHECK(rel < 5.0e-3);
    }
}

TEST_CASE("tabulated: exact at nodes, clamped outside") {
    const std::vector<std::pair<double, double>> tab = {
        {0.1, 5.0}, {1.0, 3.0}, {10.0, 1.5}};
    const auto m = PermittivityModel::tabulated(tab);
    for (const auto& [x, e] : tab) CHECK(m.eps(x) == doctest::Approx(e).epsilon(1e-12));
    CHECK(m.eps(1e-3) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(m.eps(1e3) == doctest::Approx(1.5).epsilon(1e-12));
    const double mid = m.eps(0.3);
    CHECK(mid < 5.0);
    CHECK(mid > 3.0);
}

TEST_CASE("tabulated rejects bad tables") {
    CHECK_THROWS(PermittivityModel::tabulated({}));
    CHECK_THROWS(PermittivityModel::tabulated({{1.0, 2.0}, {0.5, 3.0}}));
    CHECK_THROWS(PermittivityModel::tabulated({{0.5, 0.2}, {1.0, 2.0}}));
}

} // TEST_SUITE
