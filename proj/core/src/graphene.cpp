#include "casimir/graphene.hpp"
#include "casimir/quadrature.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace casimir::graphene {

using constants::alpha_fs;
using constants::hbar_c_ev_nm;
using constants::k_b_ev_per_k;

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_sheet(const GrapheneSheet& s) {
    if (!(s.gap_ev >= 0.0))
        throw std::invalid_argument("graphene: gap must be >= 0");
    if (!(s.mu_ev >= 0.0))
        throw std::invalid_argument("graphene: chemical potential must be >= 0");
    if (!(s.vf_ratio > 0.0 && s.vf_ratio < 1.0))
        throw std::invalid_argument("graphene: vf_ratio must lie in (0, 1)");
}

// Fermi-Dirac occupation 1/(e^x + 1), safe against exp overflow.
double fermi(double x) {
    if (x > 45.0) return std::exp(-x);
    if (x < -45.0) return 1.0;
    return 1.0 / (std::exp(x) + 1.0);
}

// log(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

num::QuadratureOptions quad_opts(double tol) {
    num::QuadratureOptions o;
    o.abs_tol = tol;
    o.rel_tol = tol;
    return o;
}

// The context's q_tilde must be consistent with the sheet's Fermi velocity;
// a mismatch means the caller built the context for a different sheet.
void check_consistency(const SpectralContext& ctx, const GrapheneSheet& s) {
    const double xic = ctx.xi_ev / hbar_c_ev_nm;
    const double vkp = s.vf_ratio * ctx.kperp_nm;
    const double qt2 = vkp * vkp + xic * xic;
    const double diff = std::abs(ctx.q_tilde_nm * ctx.q_tilde_nm - qt2);
    if (diff > 1e-10 * std::max(qt2, 1e-300))
        throw std::invalid_argument("graphene: context momenta inconsistent with sheet vf");
}

} // namespace

SpectralContext make_context(int l, double temperature_k, double kperp_nm,
                             double vf_ratio) {
    if (l < 0) throw std::invalid_argument("make_context: l must be >= 0");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("make_context: temperature must be positive");
    SpectralContext ctx = make_context_xi(
        constants::matsubara_energy_ev(l, temperature_k), kperp_nm,
        temperature_k, vf_ratio);
    ctx.l = l;
    return ctx;
}

SpectralContext make_context_xi(double xi_ev, double kperp_nm,
                                double temperature_k, double vf_ratio) {
    if (!(xi_ev >= 0.0))
        throw std::invalid_argument("make_context: xi must be >= 0");
    if (!(kperp_nm >= 0.0))
        throw std::invalid_argument("make_context: kperp must be >= 0");
    if (!(vf_ratio > 0.0 && vf_ratio < 1.0))
        throw std::invalid_argument("make_context: vf_ratio must lie in (0, 1)");
    SpectralContext ctx;
    ctx.l = -1;
    ctx.xi_ev = xi_ev;
    ctx.kperp_nm = kperp_nm;
    ctx.temperature_k = temperature_k;
    const double xic = xi_ev / hbar_c_ev_nm;
    ctx.q_nm = std::hypot(kperp_nm, xic);
    ctx.q_tilde_nm = std::hypot(vf_ratio * kperp_nm, xic);
    return ctx;
}

double psi(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("psi: argument must be >= 0");
    if (x > 100.0) {
        // Asymptotic series; the direct formula cancels to O(1/x) out of
        // O(x) terms and loses precision for large arguments.
        const double ix2 = 1.0 / (x * x);
        double sum = 0.0, pw = 1.0 / x;
        for (int k = 0; k <= 6; ++k) {
            const double c = (4.0 * k + 4.0) / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
            sum += (k % 2 == 0 ? c : -c) * pw;
            pw *= ix2;
        }
        return 2.0 * sum;
    }
    return 2.0 * (x + (1.0 - x * x) * std::atan(1.0 / x));
}

PolarizationPair pt_order0(const SpectralContext& ctx, const GrapheneSheet& sheet) {
    validate_sheet(sheet);
    check_consistency(ctx, sheet);
    const double qt = ctx.q_tilde_nm;
    if (qt <= 0.0)
        throw std::invalid_argument("pt_order0: q_tilde must be positive");
    const double kp2 = ctx.kperp_nm * ctx.kperp_nm;
    const double p = psi(sheet.gap_ev / (hbar_c_ev_nm * qt));
    return {alpha_fs * kp2 * p / qt, alpha_fs * kp2 * qt * p};
}

PolarizationPair pt_thermal(const SpectralContext& ctx, const GrapheneSheet& sheet,
                            double quad_tol) {
    validate_sheet(sheet);
    check_consistency(ctx, sheet);
    if (ctx.l < 1)
        throw std::invalid_argument("pt_thermal: requires Matsubara order l >= 1");
    if (!(ctx.temperature_k > 0.0))
        throw std::invalid_argument("pt_thermal: requires positive temperature");

    const double qt = ctx.q_tilde_nm;
    const double xic = ctx.xi_ev / hbar_c_ev_nm;
    const double gamma = xic / qt;          // in (0, 1]
    const double dl = sheet.gap_ev / (hbar_c_ev_nm * qt);
    const double kt = k_b_ev_per_k * ctx.temperature_k;
    const double bl = hbar_c_ev_nm * qt / (2.0 * kt);
    const double mu_t = sheet.mu_ev / kt;

    const double u_max = (36.0 + mu_t) / bl;
    if (u_max <= dl) return {0.0, 0.0};

    const double g2 = gamma * gamma;
    const double d2s = dl * dl * (1.0 - g2);
    const double inv_g = 1.0 / gamma;
    const double te_d = (inv_g * inv_g - 1.0) * dl * dl;

    const auto occupation = [&](double u) {
        return fermi(bl * u + mu_t) + fermi(bl * u - mu_t);
    };
    const auto sqrt_arg = [&](double u) {
        return std::complex<double>(1.0 - u * u + d2s, 2.0 * gamma * u);
    };

    const auto f00 = [&](double u) {
        const std::complex<double> s = std::sqrt(sqrt_arg(u));
        const std::complex<double> num(1.0 - u * u, 2.0 * gamma * u);
        return occupation(u) * (1.0 - (num / s).real());
    };
    const auto fte = [&](double u) {
        const std::complex<double> s = std::sqrt(sqrt_arg(u));
        const double ug = u * inv_g;
        const std::complex<double> num(1.0 - ug * ug + te_d, 2.0 * ug);
        return occupation(u) * (1.0 - (num / s).real());
    };

    // Pre-split at the square-root branch shoulder and the Fermi step.
    const double knots[2] = {std::sqrt(1.0 + d2s), mu_t / bl};
    const auto opt = quad_opts(quad_tol);
    const double i00 =
        num::integrate_split(f00, dl, u_max, knots, 2, opt).value;
    const double ite =
        num::integrate_split(fte, dl, u_max, knots, 2, opt).value;

    const double cvf2 = 1.0 / (sheet.vf_ratio * sheet.vf_ratio);
    return {4.0 * alpha_fs * cvf2 * qt * i00,
            -4.0 * alpha_fs * cvf2 * xic * xic * qt * ite};
}

PolarizationPair pt_l0(double kperp_nm, const GrapheneSheet& sheet,
                       double temperature_k, double quad_tol) {
    validate_sheet(sheet);
    if (!(kperp_nm >= 0.0))
        throw std::invalid_argument("pt_l0: kperp must be >= 0");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("pt_l0: requires positive temperature");

    const double kt = k_b_ev_per_k * temperature_k;
    const double vf = sheet.vf_ratio;
    const double mu_t = sheet.mu_ev / kt;
    const double half_gap_t = sheet.gap_ev / (2.0 * kt);

    // Closed thermal log term survives even at kperp = 0.
    const double log_term = log_add_exp(mu_t, -half_gap_t) +
                            log_add_exp(-mu_t, -half_gap_t);
    const double pi00_const =
        8.0 * alpha_fs * (kt / hbar_c_ev_nm) * log_term / (vf * vf);

    if (kperp_nm == 0.0) return {pi00_const, 0.0};

    const double hvk = hbar_c_ev_nm * vf * kperp_nm; // hbar*v_F*kperp (eV)
    const double d0 = sheet.gap_ev / hvk;
    const double b0 = hvk / (2.0 * kt);
    const double p = psi(d0);

    const double r = std::sqrt(1.0 + d0 * d0);
    const double theta0 = std::atan(d0);
    const auto occupation = [&](double u) {
        return fermi(b0 * u + mu_t) + fermi(b0 * u - mu_t);
    };
    const auto f00 = [&](double th) {
        const double u = r * std::sin(th);
        return occupation(u) * (1.0 - u * u);
    };
    const auto fpp = [&](double th) {
        const double u = r * std::sin(th);
        return occupation(u) * (d0 * d0 - u * u);
    };
    const auto opt = quad_opts(quad_tol);
    const double i00 = num::integrate(f00, theta0, 0.5 * kPi, opt).value;
    const double ipp = num::integrate(fpp, theta0, 0.5 * kPi, opt).value;

    const double pi00 = alpha_fs * kperp_nm * (p - 4.0 * i00) / vf + pi00_const;
    const double kp3 = kperp_nm * kperp_nm * kperp_nm;
    const double pi = alpha_fs * vf * kp3 * (p + 4.0 * ipp);
    return {pi00, pi};
}

double approx_bracket(double xi_ev, double temperature_k,
                      const GrapheneSheet& sheet, double quad_tol) {
    validate_sheet(sheet);
    if (!(xi_ev > 0.0))
        throw std::invalid_argument("approx_bracket: xi must be positive");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("approx_bracket: requires positive temperature");

    const double kt = k_b_ev_per_k * temperature_k;
    const double mu_t = sheet.mu_ev / kt;
    const double b = xi_ev / (2.0 * kt); // = pi*l on the Matsubara grid
    const double d = sheet.gap_ev / xi_ev;

    const double u_max = (36.0 + mu_t) / b;
    double y = 0.0;
    if (u_max > d) {
        const auto f = [&](double u) {
            const double occ = fermi(b * u + mu_t) + fermi(b * u - mu_t);
            return occ * (u * u + d * d) / (u * u + 1.0);
        };
        const double knot = mu_t / b;
        y = 2.0 * num::integrate_split(f, d, u_max, &knot, 1, quad_opts(quad_tol)).value;
    }
    return psi(d) + y;
}

PolarizationPair pt_approx_lgeq1(const SpectralContext& ctx, const GrapheneSheet& sheet,
                                 double quad_tol) {
    check_consistency(ctx, sheet);
    if (ctx.l < 1)
        throw std::invalid_argument("pt_approx_lgeq1: requires Matsubara order l >= 1");
    const double bracket =
        approx_bracket(ctx.xi_ev, ctx.temperature_k, sheet, quad_tol);
    const double kp2 = ctx.kperp_nm * ctx.kperp_nm;
    const double xic = ctx.xi_ev / hbar_c_ev_nm;
    return {alpha_fs * kp2 * bracket / xic, alpha_fs * kp2 * xic * bracket};
}

PolarizationPair pt_zero_temperature(double xi_ev, double kperp_nm,
                                     const GrapheneSheet& sheet) {
    validate_sheet(sheet);
    if (!(xi_ev >= 0.0) || !(kperp_nm >= 0.0))
        throw std::invalid_argument("pt_zero_temperature: momenta must be >= 0");
    if (xi_ev == 0.0 && kperp_nm == 0.0)
        throw std::invalid_argument("pt_zero_temperature: xi and kperp cannot both vanish");

    const SpectralContext ctx = make_context_xi(xi_ev, kperp_nm, 0.0, sheet.vf_ratio);
    if (2.0 * sheet.mu_ev <= sheet.gap_ev) return pt_order0(ctx, sheet);
    if (kperp_nm == 0.0) return {0.0, 0.0};

    const double qt = ctx.q_tilde_nm;
    const double d = sheet.gap_ev / (hbar_c_ev_nm * qt);
    const double m = 1.0 + d * d;
    const double hvk = hbar_c_ev_nm * sheet.vf_ratio * kperp_nm;

    double e = xi_ev;
    std::complex<double> y(e / (hvk * std::sqrt(m)),
                           2.0 * sheet.mu_ev / (hvk * std::sqrt(m)));
    std::complex<double> one_y2 = 1.0 + y * y;
    if (std::abs(one_y2) < 1e-12) {
        // Nudge off the branch point of sqrt(1 + y^2).
        e += 1e-9;
        y = {e / (hvk * std::sqrt(m)), 2.0 * sheet.mu_ev / (hvk * std::sqrt(m))};
        one_y2 = 1.0 + y * y;
    }
    const std::complex<double> w = std::sqrt(one_y2);
    const double g1 = (y * w).imag();
    const double g2 = std::log(y + w).imag();

    const double vf2 = sheet.vf_ratio * sheet.vf_ratio;
    const double kp2 = kperp_nm * kperp_nm;
    const double xic = xi_ev / hbar_c_ev_nm;
    const double lead = 8.0 * alpha_fs * sheet.mu_ev / (hbar_c_ev_nm * vf2);

    const double pi00 =
        lead - (alpha_fs * kp2 / qt) *
                   (2.0 * m * g1 + (2.0 - m) * (2.0 * g2 - kPi));
    const double pi =
        -lead * xic * xic +
        2.0 * alpha_fs * qt * kp2 *
            (m * g1 - (2.0 - m) * g2 + 0.5 * kPi * (2.0 - m));
    return {pi00, pi};
}

PolarizationPair pt_total(const SpectralContext& ctx, const GrapheneSheet& sheet,
                          TensorRoute route, double quad_tol) {
    if (ctx.l < 0)
        throw std::invalid_argument("pt_total: requires a Matsubara context");
    if (route == TensorRoute::zero_temperature)
        return pt_zero_temperature(ctx.xi_ev, ctx.kperp_nm, sheet);
    if (ctx.l == 0)
        return pt_l0(ctx.kperp_nm, sheet, ctx.temperature_k, quad_tol);
    if (route == TensorRoute::thermal_approx)
        return pt_approx_lgeq1(ctx, sheet, quad_tol);
    const PolarizationPair base = pt_order0(ctx, sheet);
    const PolarizationPair th = pt_thermal(ctx, sheet, quad_tol);
    return {base.pi00_nm + th.pi00_nm, base.pi_nm3 + th.pi_nm3};
}

double chemical_potential_from_concentration(double n_cm2, double vf_ratio) {
    if (!(n_cm2 >= 0.0))
        throw std::invalid_argument("concentration must be >= 0");
    if (!(vf_ratio > 0.0 && vf_ratio < 1.0))
        throw std::invalid_argument("vf_ratio must lie in (0, 1)");
    const double n_nm2 = n_cm2 * 1e-14;
    return hbar_c_ev_nm * vf_ratio * std::sqrt(kPi * n_nm2);
}

} // namespace casimir::graphene
