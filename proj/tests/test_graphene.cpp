#include "casimir/graphene.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace casimir::graphene;
using casimir::constants::alpha_fs;
using casimir::constants::hbar_c_ev_nm;
using casimir::constants::k_b_ev_per_k;
using testsupport::kPi;

namespace {

GrapheneSheet pristine() { return {0.0, 0.0, 1.0 / 300.0}; }

GrapheneSheet experimental() { return {0.29, 0.24, 1.0 / 300.0}; }

} // namespace

TEST_SUITE("graphene") {

TEST_CASE("psi endpoints and flat middle") {
    CHECK(psi(0.0) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(psi(1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(psi(10.0) == doctest::Approx(0.2656068).epsilon(1e-6));
    CHECK(psi(1e-9) == doctest::Approx(kPi).epsilon(1e-8));
    CHECK_THROWS(psi(-0.1));
}

TEST_CASE("psi decreasing and asymptotic to 8/(3x)") {
    double prev = psi(0.0);
    for (double x = 0.05; x < 30.0; x *= 1.4) {
        const double p = psi(x);
        CHECK(p < prev);
        CHECK(p > 0.0);
        prev = p;
    }
    for (double x : {50.0, 2e2, 1e4}) // spans the series switchover
        CHECK(psi(x) == doctest::Approx(8.0 / (3.0 * x)).epsilon(2e-4));
}

TEST_CASE("pt_order0 gapless form") {
    const auto sheet = pristine();
    const auto ctx = make_context(1, 294.0, 0.01);
    const auto pt = pt_order0(ctx, sheet);
    CHECK(pt.pi00_nm ==
          doctest::Approx(kPi * alpha_fs * 1e-4 / ctx.q_tilde_nm).epsilon(1e-12));
    CHECK(pt.pi_nm3 ==
          doctest::Approx(kPi * alpha_fs * 1e-4 * ctx.q_tilde_nm).epsilon(1e-12));
}

TEST_CASE("pt_order0 is suppressed by a large gap") {
    auto big = pristine();
    const auto ctx = make_context(1, 294.0, 0.01);
    big.gap_ev = 1e3 * hbar_c_ev_nm * ctx.q_tilde_nm; // D = 1000
    const auto wide = pt_order0(ctx, big);
    const auto none = pt_order0(ctx, pristine());
    CHECK(wide.pi00_nm < 1e-2 * none.pi00_nm);
    CHECK(wide.pi_nm3 < 1e-2 * none.pi_nm3);
}

TEST_CASE("pt_order0 gap asymptote at zero frequency") {
    // k = 1e-3/nm, xi = 0, gap 0.29 eV: D0 = 440.9, Psi ~ 8/(3 D0).
    auto sheet = experimental();
    const auto ctx = make_context_xi(0.0, 1e-3, 0.0, sheet.vf_ratio);
    const double d0 = 0.29 / (hbar_c_ev_nm * sheet.vf_ratio * 1e-3);
    CHECK(d0 == doctest::Approx(440.9).epsilon(1e-3));
    const auto pt = pt_order0(ctx, sheet);
    const double expected = alpha_fs * 1e-6 * (8.0 / (3.0 * d0)) / ctx.q_tilde_nm;
    CHECK(pt.pi00_nm == doctest::Approx(expected).epsilon(2e-5));
}

TEST_CASE("pt_thermal vanishes with the Fermi factors") {
    const auto ctx = make_context(1, 1e-3, 0.01);
    const auto cold = pt_thermal(ctx, {0.29, 0.0, 1.0 / 300.0});
    const auto base = pt_order0(ctx, {0.29, 0.0, 1.0 / 300.0});
    CHECK(std::abs(cold.pi00_nm) < 1e-10 * base.pi00_nm);
    CHECK(std::abs(cold.pi_nm3) < 1e-10 * base.pi_nm3);
}

TEST_CASE("pt_thermal against the dense-grid reference") {
    const auto sheet = experimental();
    for (const auto& [l, kp] : {std::pair{1, 0.002}, {3, 0.02}, {7, 0.005}}) {
        const auto got = pt_thermal(make_context(l, 294.0, kp), sheet);
        const auto ref = testsupport::pt_thermal_ref(l, 294.0, kp, sheet);
        CHECK(got.pi00_nm == doctest::Approx(ref.pi00).epsilon(1e-6));
        CHECK(got.pi_nm3 == doctest::Approx(ref.pi).epsilon(1e-6));
    }
}

TEST_CASE("exact and approximate tensors agree pointwise for pristine") {
    const auto sheet = pristine();
    const auto ctx = make_context(1, 294.0, 1.0 / 500.0);
    const auto base = pt_order0(ctx, sheet);
    const auto th = pt_thermal(ctx, sheet);
    const auto ap = pt_approx_lgeq1(ctx, sheet);
    CHECK(base.pi00_nm + th.pi00_nm ==
          doctest::Approx(ap.pi00_nm).epsilon(1e-4));
    CHECK(base.pi_nm3 + th.pi_nm3 == doctest::Approx(ap.pi_nm3).epsilon(1e-4));
}

TEST_CASE("pt_l0 log term for the gapless undoped sheet") {
    const double kt = k_b_ev_per_k * 294.0;
    const double expected =
        16.0 * std::log(2.0) * alpha_fs * kt / (hbar_c_ev_nm / 90000.0);
    const auto pt = pt_l0(0.0, pristine(), 294.0);
    CHECK(pt.pi00_nm == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pt.pi_nm3 == 0.0);
}

TEST_CASE("pt_l0 reduces to the undamped form as T -> 0") {
    // The closed log term scales linearly with T and is ~1e-7 relative here.
    const double kp = 0.01;
    const auto pt = pt_l0(kp, pristine(), 1e-6);
    CHECK(pt.pi00_nm ==
          doctest::Approx(kPi * alpha_fs * kp * 300.0).epsilon(1e-6));
}

TEST_CASE("pt_l0 against the dense-grid reference") {
    const auto sheet = experimental();
    for (double kp : {0.002, 0.02}) {
        const auto got = pt_l0(kp, sheet, 294.0);
        const auto ref = testsupport::pt_l0_ref(kp, sheet, 294.0);
        CHECK(got.pi00_nm == doctest::Approx(ref.pi00).epsilon(1e-6));
        CHECK(got.pi_nm3 == doctest::Approx(ref.pi).epsilon(1e-6));
    }
}

TEST_CASE("approx bracket: cold limit and dense reference") {
    const double xi1 = 2.0 * kPi * k_b_ev_per_k * 294.0;
    // mu = 0, T -> 0 probe: Y -> 0 leaves Psi alone.
    GrapheneSheet gapped{0.29, 0.0, 1.0 / 300.0};
    CHECK(approx_bracket(0.4, 1e-3, gapped) ==
          doctest::Approx(psi(0.29 / 0.4)).epsilon(1e-10));
    // Gapless doped sheet against the brute-force Y integral.
    GrapheneSheet doped{0.0, 0.24, 1.0 / 300.0};
    CHECK(approx_bracket(xi1, 294.0, doped) ==
          doctest::Approx(testsupport::bracket_ref(xi1, 294.0, doped)).epsilon(1e-6));
    // The experimental sheet too.
    CHECK(approx_bracket(xi1, 294.0, experimental()) ==
          doctest::Approx(testsupport::bracket_ref(xi1, 294.0, experimental()))
              .epsilon(1e-6));
}

TEST_CASE("bracket is kperp-independent by construction") {
    const auto sheet = experimental();
    const auto a = pt_approx_lgeq1(make_context(2, 294.0, 0.001), sheet);
    const auto b = pt_approx_lgeq1(make_context(2, 294.0, 0.05), sheet);
    const double xi = 2.0 * kPi * k_b_ev_per_k * 294.0 * 2.0;
    const double xic = xi / hbar_c_ev_nm;
    CHECK(a.pi00_nm / (alpha_fs * 0.001 * 0.001 / xic) ==
          doctest::Approx(b.pi00_nm / (alpha_fs * 0.05 * 0.05 / xic))
              .epsilon(1e-12));
}

TEST_CASE("pt_zero_temperature equals the undamped tensor when doping is hidden") {
    for (const auto& [gap, mu] : {std::pair{0.29, 0.0}, {0.29, 0.145}, {0.1, 0.05}}) {
        GrapheneSheet s{gap, mu, 1.0 / 300.0};
        const auto zt = pt_zero_temperature(0.5, 0.003, s);
        const auto o0 = pt_order0(make_context_xi(0.5, 0.003, 0.0, s.vf_ratio), s);
        CHECK(zt.pi00_nm == o0.pi00_nm);
        CHECK(zt.pi_nm3 == o0.pi_nm3);
    }
}

TEST_CASE("pt_zero_temperature is continuous across 2mu = gap") {
    std::mt19937 rng(20214u);
    std::uniform_real_distribution<double> logxi(-3.0, 1.0), logkp(-4.0, -1.0);
    const double gap = 0.29, eps = 1e-9;
    for (int i = 0; i < 20; ++i) {
        const double xi = std::pow(10.0, logxi(rng));
        const double kp = std::pow(10.0, logkp(rng));
        GrapheneSheet lo{gap, 0.5 * gap * (1.0 - eps), 1.0 / 300.0};
        GrapheneSheet hi{gap, 0.5 * gap * (1.0 + eps), 1.0 / 300.0};
        const auto a = pt_zero_temperature(xi, kp, lo);
        const auto b = pt_zero_temperature(xi, kp, hi);
        CHECK(a.pi00_nm == doctest::Approx(b.pi00_nm).epsilon(1e-6));
        CHECK(a.pi_nm3 == doctest::Approx(b.pi_nm3).epsilon(1e-6));
    }
}

TEST_CASE("finite-T tensor converges to pt_zero_temperature") {
    // Matched Matsubara frequencies near hbar*xi = 0.4 eV at successively
    // lower temperatures; the exact l >= 1 composition must approach the
    // zero-temperature closed form, doping term included.
    const auto sheet = experimental();
    const double kp = 0.002;
    double prev_err = 1e9;
    for (double t : {40.0, 10.0, 2.0}) {
        const double xi1 = 2.0 * kPi * k_b_ev_per_k * t;
        const int l = static_cast<int>(std::lround(0.4 / xi1));
        const auto ctx = make_context(l, t, kp);
        const auto base = pt_order0(ctx, sheet);
        const auto th = pt_thermal(ctx, sheet);
        const auto zt = pt_zero_temperature(ctx.xi_ev, kp, sheet);
        const double err =
            std::abs((base.pi00_nm + th.pi00_nm - zt.pi00_nm) / zt.pi00_nm);
        CHECK(err < prev_err * 1.01);
        prev_err = err;
        if (t == 2.0) {
            CHECK(base.pi00_nm + th.pi00_nm ==
                  doctest::Approx(zt.pi00_nm).epsilon(1e-4));
            CHECK(base.pi_nm3 + th.pi_nm3 ==
                  doctest::Approx(zt.pi_nm3).epsilon(1e-4));
        }
    }
}

TEST_CASE("additivity of the exact composition") {
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> logkp(-4.0, -0.5), gap(0.0, 0.5),
        mu(0.0, 0.5), temp(50.0, 600.0);
    std::uniform_int_distribution<int> order(1, 40);
    for (int i = 0; i < 100; ++i) {
        GrapheneSheet s{gap(rng), mu(rng), 1.0 / 300.0};
        const auto ctx = make_context(order(rng), temp(rng),
                                      std::pow(10.0, logkp(rng)), s.vf_ratio);
        const auto total = pt_total(ctx, s, TensorRoute::thermal_exact);
        const auto base = pt_order0(ctx, s);
        const auto th = pt_thermal(ctx, s);
        CHECK(total.pi00_nm == base.pi00_nm + th.pi00_nm); // bitwise
        CHECK(total.pi_nm3 == base.pi_nm3 + th.pi_nm3);
    }
}

TEST_CASE("positivity of every route over the sampled domain") {
    std::mt19937 rng(13u);
    std::uniform_real_distribution<double> logkp(-4.0, -0.5);
    std::uniform_int_distribution<int> order(0, 30);
    const GrapheneSheet sheets[] = {pristine(), experimental(),
                                    {0.1, 0.4, 1.0 / 300.0}};
    for (const auto& s : sheets) {
        for (int i = 0; i < 40; ++i) {
            const int l = order(rng);
            const double kp = std::pow(10.0, logkp(rng));
            const auto ctx = make_context(l, 294.0, kp, s.vf_ratio);
            for (auto route : {TensorRoute::thermal_exact, TensorRoute::thermal_approx,
                               TensorRoute::zero_temperature}) {
                const auto pt = pt_total(ctx, s, route);
                CHECK(pt.pi00_nm >= -1e-16); // tiny rounding allowance
                CHECK(pt.pi_nm3 >= -1e-16);
            }
        }
    }
}

TEST_CASE("pristine zero-temperature reduction across forms") {
    const auto s = pristine();
    const double kp = 0.004;
    const auto ctxm = make_context_xi(0.7, kp, 0.0, s.vf_ratio);
    const double expected00 = kPi * alpha_fs * kp * kp / ctxm.q_tilde_nm;
    CHECK(pt_order0(ctxm, s).pi00_nm == doctest::Approx(expected00).epsilon(1e-8));
    CHECK(pt_zero_temperature(0.7, kp, s).pi00_nm ==
          doctest::Approx(expected00).epsilon(1e-8));
    // l = 0 at a nearly-zero temperature collapses onto the same form.
    CHECK(pt_l0(kp, s, 1e-6).pi00_nm ==
          doctest::Approx(kPi * alpha_fs * kp / s.vf_ratio).epsilon(1e-6));
}

TEST_CASE("chemical potential from carrier concentration") {
    const double mu = chemical_potential_from_concentration(4.2e12);
    CHECK(mu == doctest::Approx(0.24).epsilon(0.021)); // paper rounding
    const double exact =
        hbar_c_ev_nm / 300.0 * std::sqrt(kPi * 4.2e12 * 1e-14);
    CHECK(mu == doctest::Approx(exact).epsilon(1e-14));
    CHECK(chemical_potential_from_concentration(0.0) == 0.0);
    CHECK(chemical_potential_from_concentration(1.05e12) ==
          doctest::Approx(0.12).epsilon(5e-3));
    CHECK_THROWS(chemical_potential_from_concentration(-1.0));
}

TEST_CASE("context bookkeeping") {
    const auto ctx = make_context(3, 294.0, 0.01);
    const double xi = 3.0 * 2.0 * kPi * k_b_ev_per_k * 294.0;
    CHECK(ctx.xi_ev == doctest::Approx(xi).epsilon(1e-14));
    const double xic = ctx.xi_ev / hbar_c_ev_nm;
    CHECK(ctx.q_nm * ctx.q_nm ==
          doctest::Approx(1e-4 + xic * xic).epsilon(1e-12));
    CHECK(ctx.q_tilde_nm * ctx.q_tilde_nm ==
          doctest::Approx(1e-4 / 9e4 + xic * xic).epsilon(1e-12));
    CHECK_THROWS(make_context(-1, 294.0, 0.01));
    CHECK_THROWS(make_context(1, -5.0, 0.01));
}

} // TEST_SUITE
