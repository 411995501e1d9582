#pragma once

// Shared fixtures and brute-force reference implementations for the test
// suites.  Everything here is deliberately slow and simple: dense fixed-grid
// quadrature, plain series, and closed forms on long doubles.  None of it
// reuses the library's adaptive machinery, so agreement is meaningful.

#include "casimir/calibration.hpp"
#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/graphene.hpp"
#include "casimir/reflection.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace testsupport {

inline constexpr double kPi = 3.14159265358979323846;

// 99th percentile of a chi-square distribution with 100 degrees of freedom;
// the Monte-Carlo consistency tests accept chi2 below this value (p > 0.01).
inline constexpr double kChi2_99pct_100dof = 135.8067;

inline double trapezoid(const std::function<double(double)>& f, double a,
                        double b, int n) {
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + (b - a) * i / n);
    return s * (b - a) / n;
}

// Overflow-safe Fermi factor 1/(e^x + 1).
inline double fermi(double x) {
    if (x > 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

inline double log_add_exp(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

struct PtRef {
    double pi00 = 0.0;
    double pi = 0.0;
};

// Dense-grid reference for the l >= 1 thermal part of the tensor: the raw
// u-integral with complex principal-branch square roots, uniform trapezoid.
inline PtRef pt_thermal_ref(int l, double temperature_k, double kperp_nm,
                            const casimir::graphene::GrapheneSheet& sheet,
                            int nodes = 1000000) {
    using casimir::constants::hbar_c_ev_nm;
    using casimir::constants::k_b_ev_per_k;
    using casimir::constants::alpha_fs;
    const double kt = k_b_ev_per_k * temperature_k;
    const double xi = 2.0 * kPi * kt * l;
    const double xic = xi / hbar_c_ev_nm;
    const double qt = std::hypot(sheet.vf_ratio * kperp_nm, xic);
    const double gamma = xic / qt;
    const double d = sheet.gap_ev / (hbar_c_ev_nm * qt);
    const double b = hbar_c_ev_nm * qt / (2.0 * kt);
    const double mu_t = sheet.mu_ev / kt;
    const double u_max = (50.0 + mu_t) / b;
    if (u_max <= d) return {};

    const double d2s = d * d * (1.0 - gamma * gamma);
    const double inv_g = 1.0 / gamma;
    const double te_d = (inv_g * inv_g - 1.0) * d * d;
    const auto occ = [&](double u) {
        return fermi(b * u + mu_t) + fermi(b * u - mu_t);
    };
    const auto f00 = [&](double u) {
        const std::complex<double> s =
            std::sqrt(std::complex<double>(1.0 - u * u + d2s, 2.0 * gamma * u));
        const std::complex<double> num(1.0 - u * u, 2.0 * gamma * u);
        return occ(u) * (1.0 - (num / s).real());
    };
    const auto fte = [&](double u) {
        const std::complex<double> s =
            std::sqrt(std::complex<double>(1.0 - u * u + d2s, 2.0 * gamma * u));
        const double ug = u * inv_g;
        const std::complex<double> num(1.0 - ug * ug + te_d, 2.0 * ug);
        return occ(u) * (1.0 - (num / s).real());
    };
    const double i00 = trapezoid(f00, d, u_max, nodes);
    const double ite = trapezoid(fte, d, u_max, nodes);
    const double cvf2 = 1.0 / (sheet.vf_ratio * sheet.vf_ratio);
    return {4.0 * alpha_fs * cvf2 * qt * i00,
            -4.0 * alpha_fs * cvf2 * xic * xic * qt * ite};
}

// Dense-grid reference for the full zero-Matsubara tensor.
inline PtRef pt_l0_ref(double kperp_nm,
                       const casimir::graphene::GrapheneSheet& sheet,
                       double temperature_k, int nodes = 400000) {
    using casimir::constants::hbar_c_ev_nm;
    using casimir::constants::k_b_ev_per_k;
    using casimir::constants::alpha_fs;
    const double kt = k_b_ev_per_k * temperature_k;
    const double vf = sheet.vf_ratio;
    const double mu_t = sheet.mu_ev / kt;
    const double hg = sheet.gap_ev / (2.0 * kt);
    const double log_term = log_add_exp(mu_t, -hg) + log_add_exp(-mu_t, -hg);
    const double pi00_const =
        8.0 * alpha_fs * (kt / hbar_c_ev_nm) * log_term / (vf * vf);
    if (kperp_nm == 0.0) return {pi00_const, 0.0};

    const double hvk = hbar_c_ev_nm * vf * kperp_nm;
    const double d0 = sheet.gap_ev / hvk;
    const double b0 = hvk / (2.0 * kt);
    const double p =
        2.0 * (d0 + (1.0 - d0 * d0) * std::atan2(1.0, d0)); // Psi, plain form
    const double r = std::sqrt(1.0 + d0 * d0);
    const double th0 = std::atan(d0);
    const auto occ = [&](double u) {
        return fermi(b0 * u + mu_t) + fermi(b0 * u - mu_t);
    };
    const double i00 = trapezoid(
        [&](double th) {
            const double u = r * std::sin(th);
            return occ(u) * (1.0 - u * u);
        },
        th0, 0.5 * kPi, nodes);
    const double ipp = trapezoid(
        [&](double th) {
            const double u = r * std::sin(th);
            return occ(u) * (d0 * d0 - u * u);
        },
        th0, 0.5 * kPi, nodes);
    const double kp3 = kperp_nm * kperp_nm * kperp_nm;
    return {alpha_fs * kperp_nm * (p - 4.0 * i00) / vf + pi00_const,
            alpha_fs * vf * kp3 * (p + 4.0 * ipp)};
}

// Dense-grid reference for the large-frequency bracket Psi(D) + Y_l.
inline double bracket_ref(double xi_ev, double temperature_k,
                          const casimir::graphene::GrapheneSheet& sheet,
                          int nodes = 1000000) {
    using casimir::constants::k_b_ev_per_k;
    const double kt = k_b_ev_per_k * temperature_k;
    const double mu_t = sheet.mu_ev / kt;
    const double b = xi_ev / (2.0 * kt);
    const double d = sheet.gap_ev / xi_ev;
    const double p = 2.0 * (d + (1.0 - d * d) * std::atan2(1.0, d));
    const double u_max = (50.0 + mu_t) / b;
    if (u_max <= d) return p;
    const double y = 2.0 * trapezoid(
                               [&](double u) {
                                   const double occ = fermi(b * u + mu_t) +
                                                      fermi(b * u - mu_t);
                                   return occ * (u * u + d * d) / (u * u + 1.0);
                               },
                               d, u_max, nodes);
    return p + y;
}

// Exact sphere-plate capacitance from the bispherical image series, farads.
inline double capacitance_f(double a_nm, double radius_nm) {
    const double a = a_nm * 1e-9;
    const double radius = radius_nm * 1e-9;
    const double tau = std::acosh(1.0 + a / radius);
    double sum = 0.0;
    for (long n = 1;; ++n) {
        const double term = 1.0 / std::sinh(n * tau);
        sum += term;
        if (n * tau > 45.0) break; // csch underflows well below double eps
    }
    return 4.0 * kPi * casimir::constants::eps0_f_per_m * radius *
           std::sinh(tau) * sum;
}

// Finite-difference C''(a)/2: the electrostatic force gradient per squared
// volt, independent of the closed-form series under test.
inline double xprime_fd_ref(double a_nm, double radius_nm) {
    const double h_nm = 0.1;
    const auto second = [&](double h) {
        return (capacitance_f(a_nm + h, radius_nm) -
                2.0 * capacitance_f(a_nm, radius_nm) +
                capacitance_f(a_nm - h, radius_nm)) /
               (h * 1e-9 * h * 1e-9);
    };
    // One Richardson step kills the O(h^2) truncation term.
    const double c2 = second(h_nm), c1 = second(0.5 * h_nm);
    return 0.5 * (c1 + (c1 - c2) / 3.0);
}

// The experimental configuration of record: gapped, doped graphene on SiO2
// against a Au-coated sphere, all from the built-in config defaults.
struct ExperimentalSystem {
    casimir::config::RunConfig cfg;
    casimir::reflection::BoundarySpec plate;
    casimir::reflection::BoundarySpec sphere;
    ExperimentalSystem()
        : plate(casimir::config::plate_boundary(cfg)),
          sphere(casimir::config::sphere_boundary(cfg)) {}
};

// Synthetic PLL dataset: voltage-swept frequency shifts from the forward
// model, optionally with iid Gaussian PLL noise.
struct SyntheticCalibration {
    double v0_v = 0.1324;
    double z0_nm = 236.9;
    double c_s_per_kg = 4.599e5;
    std::vector<double> voltages;
    std::vector<double> z_piezo_nm;

    SyntheticCalibration() {
        for (int i = 0; i <= 10; ++i) voltages.push_back(0.083 + 0.01 * i);
        voltages.push_back(0.133); // repeated mid-range point
        for (double z = 13.1; z <= 463.2; z += 22.5) z_piezo_nm.push_back(z);
    }

    // Smooth stand-in for the Casimir gradient, N/m at separation a (nm).
    static double casimir_n_per_m(double a_nm) {
        return 1.6e-4 / std::pow(a_nm / 100.0, 3.5);
    }

    std::vector<casimir::calibration::ShiftRecord>
    make(double radius_nm, double noise_rad_s, unsigned seed, int set_id = 1) const {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<casimir::calibration::ShiftRecord> out;
        int run = 0;
        for (double z : z_piezo_nm) {
            const double a = z + z0_nm;
            for (double v : voltages) {
                casimir::calibration::ShiftRecord r;
                r.z_piezo_nm = z;
                r.voltage_v = v;
                r.delta_omega_rad_s = casimir::calibration::frequency_shift_forward(
                    a, radius_nm, v, v0_v, c_s_per_kg, casimir_n_per_m(a));
                if (noise_rad_s > 0.0) r.delta_omega_rad_s += noise_rad_s * gauss(rng);
                r.set_id = set_id;
                r.run_id = run++;
                out.push_back(r);
            }
        }
        return out;
    }
};

} // namespace testsupport
