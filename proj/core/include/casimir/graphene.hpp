#pragma once

#include "casimir/constants.hpp"

namespace casimir::graphene {

// Dirac-model graphene sheet: mass-gap parameter Delta (eV), chemical
// potential mu (eV), Fermi velocity as a fraction of c.
struct GrapheneSheet {
    double gap_ev = 0.0;
    double mu_ev = 0.0;
    double vf_ratio = constants::default_vf_ratio;
};

// One point of the (Matsubara order, transverse momentum) grid.
//   xi_ev       photon energy hbar*xi of the imaginary frequency (eV)
//   kperp_nm    transverse momentum (1/nm)
//   q_nm        sqrt(kperp^2 + (xi/c)^2)           photon momentum (1/nm)
//   q_tilde_nm  sqrt(vf^2 kperp^2 + (xi/c)^2)      Dirac momentum (1/nm)
// l = -1 marks a continuous-frequency point (zero-temperature integral).
struct SpectralContext {
    int l = 0;
    double xi_ev = 0.0;
    double kperp_nm = 0.0;
    double q_nm = 0.0;
    double q_tilde_nm = 0.0;
    double temperature_k = 0.0;
};

// Matsubara-indexed context: xi_l = 2*pi*k_B*T*l.
SpectralContext make_context(int l, double temperature_k, double kperp_nm,
                             double vf_ratio = constants::default_vf_ratio);
// Continuous-frequency context (l = -1).
SpectralContext make_context_xi(double xi_ev, double kperp_nm,
                                double temperature_k = 0.0,
                                double vf_ratio = constants::default_vf_ratio);

// Polarization tensor components divided by hbar:
//   pi00_nm   Pi_00 / hbar   (1/nm)    density-density response (TM channel)
//   pi_nm3    Pi / hbar      (1/nm^3)  combination kperp^2*Pi_tr - q^2*Pi_00
struct PolarizationPair {
    double pi00_nm = 0.0;
    double pi_nm3 = 0.0;
};

// How the tensor is evaluated inside Matsubara sums.
enum class TensorRoute {
    thermal_exact,    // undamped zero-T part plus the exact thermal integral
    thermal_approx,   // exact l = 0, large-frequency closed form for l >= 1
    zero_temperature, // zero-T tensor at the thermal Matsubara frequencies
};

// Psi(x) = 2*[x + (1 - x^2) * atan(1/x)]; Psi(0) = pi, Psi(1) = 2,
// asymptotically 8/(3x).  Requires x >= 0.
double psi(double x);

// Undamped zero-temperature, zero-doping part of the tensor.
PolarizationPair pt_order0(const SpectralContext& ctx, const GrapheneSheet& sheet);

// Thermal correction for Matsubara orders l >= 1 (the u-integral with
// Fermi-Dirac occupation of both signs of the chemical potential).
PolarizationPair pt_thermal(const SpectralContext& ctx, const GrapheneSheet& sheet,
                            double quad_tol = 1e-9);

// Full tensor at the zero Matsubara frequency, where the thermal integral
// collapses onto the interval u in [D0, sqrt(1 + D0^2)] plus a closed log
// term.  The inverse-square-root endpoint is removed by u = sqrt(1+D0^2)*sin(theta).
PolarizationPair pt_l0(double kperp_nm, const GrapheneSheet& sheet,
                       double temperature_k, double quad_tol = 1e-9);

// Large-frequency closed form for l >= 1: both components reduce to
// alpha*kperp^2*(hbar*c/xi or xi/hbar*c)*[Psi(Delta/xi) + Y_l].  The bracket
// is kperp-independent; approx_bracket exposes it for per-order caching.
double approx_bracket(double xi_ev, double temperature_k,
                      const GrapheneSheet& sheet, double quad_tol = 1e-9);
PolarizationPair pt_approx_lgeq1(const SpectralContext& ctx, const GrapheneSheet& sheet,
                                 double quad_tol = 1e-9);

// Zero-temperature tensor at arbitrary imaginary frequency.  For 2*mu <=
// Delta doping is invisible and the result equals pt_order0; otherwise the
// closed form with principal-branch complex square roots and logarithms.
PolarizationPair pt_zero_temperature(double xi_ev, double kperp_nm,
                                     const GrapheneSheet& sheet);

// Route dispatcher for Matsubara contexts (exact composition at l >= 1 is
// pt_order0 + pt_thermal).
PolarizationPair pt_total(const SpectralContext& ctx, const GrapheneSheet& sheet,
                          TensorRoute route, double quad_tol = 1e-9);

// mu = hbar*v_F*sqrt(pi*n) for carrier concentration n in cm^-2.
double chemical_potential_from_concentration(double n_cm2,
                                             double vf_ratio = constants::default_vf_ratio);

} // namespace casimir::graphene
