#pragma once

#include "casimir/lifshitz.hpp"
#include "casimir/reflection.hpp"

namespace casimir::corrections {

// rms roughness of the two surfaces, in nm.
struct RoughnessParams {
    double sphere_nm = 0.9;
    double plate_nm = 1.5;
};

// Inputs entering the theory error band: spread of the sheet parameters,
// the sphere-radius uncertainty (linear in the gradient), the relative
// accuracy of the optical data, and whether the lower edge also carries the
// leading proximity-approximation deficit 1 - a/R.
struct UncertaintyBudget {
    double mu_err_ev = 0.01;
    double gap_err_ev = 0.05;
    double radius_err_nm = 50.0;
    double optical_rel = 0.005;
    bool pfa_lower = true;
};

// Everything needed to evaluate one sphere-plate configuration.
struct SystemSpec {
    lifshitz::SystemGeometry geometry;
    reflection::BoundarySpec plate = reflection::BoundarySpec::ideal_metal();
    reflection::BoundarySpec sphere = reflection::BoundarySpec::ideal_metal();
    RoughnessParams roughness;
    reflection::TeZeroMode te_mode = reflection::TeZeroMode::drude;
};

struct GradientBand {
    double center_ev_nm2 = 0.0;
    double lower_ev_nm2 = 0.0;
    double upper_ev_nm2 = 0.0;
};

// Multiplicative stochastic-roughness factor 1 + 10 (d1^2 + d2^2) / a^2.
double roughness_factor(const RoughnessParams& r, double separation_nm);

// Gradient corrected for surface roughness, in eV/nm^2.
double roughness_correct(double gradient_ev_nm2, const RoughnessParams& r,
                         double separation_nm);

// Roughness-corrected gradient with its uncertainty band.  The edges come
// from shifted sheet parameters, the flake-size allowance, and the
// dielectric-data allowance; temperature_k = 0 selects the zero-point route.
GradientBand build_band(const SystemSpec& spec, double temperature_k,
                        const UncertaintyBudget& budget,
                        const lifshitz::SummationPolicy& policy = {});

} // namespace casimir::corrections
