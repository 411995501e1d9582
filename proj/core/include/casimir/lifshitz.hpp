#pragma once

#include "casimir/constants.hpp"
#include "casimir/reflection.hpp"

namespace casimir::lifshitz {

struct SystemGeometry {
    double sphere_radius_nm = 0.0;
    double separation_nm = 0.0;
};

// Convergence controls for Matsubara sums and the inner momentum integrals.
struct SummationPolicy {
    double rel_tol = 1e-8;      // relative truncation target of the sum
    int l_max_cap = 5000;       // hard ceiling on the Matsubara order
    double quadrature_tol = 1e-9;
};

struct GradientResult {
    double value_ev_nm2 = 0.0;
    double error_ev_nm2 = 0.0;
    int l_used = 0;           // highest Matsubara order evaluated (0 at T = 0)
    bool converged = true;
    double un_per_m() const { return value_ev_nm2 * constants::ev_nm2_to_un_per_m; }
};

struct PressureResult {
    double pressure_ev_nm3 = 0.0;
    double zero_mode_ev_nm3 = 0.0; // the halved l = 0 contribution
    double error_ev_nm3 = 0.0;
    int l_used = 0;
    bool converged = true;
    double pa() const { return pressure_ev_nm3 * constants::ev_nm3_to_pa; }
    double zero_mode_fraction() const {
        return pressure_ev_nm3 > 0.0 ? zero_mode_ev_nm3 / pressure_ev_nm3 : 0.0;
    }
};

// Casimir force gradient F'(a, T) between a sphere of radius R (proximity
// force approximation) and a planar boundary, from the Matsubara sum over
// imaginary frequencies.  Sign convention: positive = attractive.
GradientResult gradient_finite_T(
    const SystemGeometry& geom, const reflection::BoundarySpec& plate,
    const reflection::BoundarySpec& sphere, double temperature_k,
    const SummationPolicy& policy = {},
    graphene::TensorRoute route = graphene::TensorRoute::thermal_approx,
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

// F'(a, 0): the Matsubara sum becomes a continuous frequency integral,
// evaluated adaptively on logarithmic panels over hbar*xi in
// [1e-5, 1e3] eV.  Coated boundaries use the zero-temperature tensor.
GradientResult gradient_zero_T(
    const SystemGeometry& geom, const reflection::BoundarySpec& plate,
    const reflection::BoundarySpec& sphere,
    const SummationPolicy& policy = {},
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

struct ThermalCorrection {
    double f_t_ev_nm2 = 0.0;   // F'(a, T)
    double f_0_ev_nm2 = 0.0;   // F'(a, 0)
    double delta_ev_nm2 = 0.0; // F'(a, T) - F'(a, 0)
    double delta_rel = 0.0;    // relative to F'(a, 0)
};

// Thermal correction with the full temperature dependence (thermal tensor
// inside the finite-T sum).
ThermalCorrection thermal_correction(
    const SystemGeometry& geom, const reflection::BoundarySpec& plate,
    const reflection::BoundarySpec& sphere, double temperature_k,
    const SummationPolicy& policy = {},
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

// Implicit variant: the finite-T Matsubara sum is taken over the
// zero-temperature tensor, isolating the purely geometric (frequency-grid)
// part of the thermal effect from the tensor's own T dependence.
ThermalCorrection thermal_correction_implicit(
    const SystemGeometry& geom, const reflection::BoundarySpec& plate,
    const reflection::BoundarySpec& sphere, double temperature_k,
    const SummationPolicy& policy = {},
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

// Casimir pressure between two parallel planar boundaries (positive =
// attractive).  tm_only drops the TE channel (diagnostic of the dominant
// polarization).
PressureResult pressure_plate_plate(
    const reflection::BoundarySpec& b1, const reflection::BoundarySpec& b2,
    double separation_nm, double temperature_k,
    const SummationPolicy& policy = {},
    graphene::TensorRoute route = graphene::TensorRoute::thermal_approx,
    bool tm_only = false,
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

// Smallest separation (nm) at which the zero-Matsubara share of the
// pressure reaches `fraction`, located by bisection (1% bracket width)
// after a monotonicity check on a logarithmic probe grid spanning
// 0.05 um to 20 um.
double thermal_regime_threshold(
    const reflection::BoundarySpec& b1, const reflection::BoundarySpec& b2,
    double temperature_k, double fraction,
    const SummationPolicy& policy = {},
    graphene::TensorRoute route = graphene::TensorRoute::thermal_approx,
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude);

// Effective temperatures at which thermal effects become dominant:
// photon-based k_B T_eff = hbar*c/(2a) and the Dirac-sector analogue with
// c replaced by the Fermi velocity.
struct EffectiveTemperatures {
    double photon_k = 0.0;
    double dirac_k = 0.0;
};
EffectiveTemperatures effective_temperatures(
    double separation_nm, double vf_ratio = constants::default_vf_ratio);

} // namespace casimir::lifshitz
