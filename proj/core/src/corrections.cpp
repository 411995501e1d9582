#include "casimir/corrections.hpp"

#include "casimir/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace casimir::corrections {

using reflection::BoundarySpec;

namespace {

BoundarySpec shift_sheet(const BoundarySpec& b, double d_mu_ev, double d_gap_ev) {
    if (!b.has_sheet()) return b;
    graphene::GrapheneSheet s = b.sheet();
    s.gap_ev = std::max(0.0, s.gap_ev + d_gap_ev);
    s.mu_ev = std::max(0.0, s.mu_ev + d_mu_ev);
    return BoundarySpec::coated(b.substrate(), s);
}

double evaluate(const SystemSpec& spec, const BoundarySpec& plate,
                const BoundarySpec& sphere, double temperature_k,
                const lifshitz::SummationPolicy& policy) {
    const lifshitz::GradientResult r =
        temperature_k > 0.0
            ? lifshitz::gradient_finite_T(spec.geometry, plate, sphere,
                                          temperature_k, policy,
                                          graphene::TensorRoute::thermal_approx,
                                          spec.te_mode)
            : lifshitz::gradient_zero_T(spec.geometry, plate, sphere, policy,
                                        spec.te_mode);
    if (!r.converged)
        throw NumericsError("corrections: Matsubara sum hit l_max_cap before rel_tol",
                            std::abs(r.error_ev_nm2),
                            policy.rel_tol * std::abs(r.value_ev_nm2));
    return r.value_ev_nm2;
}

} // namespace

double roughness_factor(const RoughnessParams& r, double separation_nm) {
    if (!(separation_nm > 0.0))
        throw std::invalid_argument("roughness_factor: separation must be positive");
    const double s2 = r.sphere_nm * r.sphere_nm + r.plate_nm * r.plate_nm;
    return 1.0 + 10.0 * s2 / (separation_nm * separation_nm);
}

double roughness_correct(double gradient_ev_nm2, const RoughnessParams& r,
                         double separation_nm) {
    return gradient_ev_nm2 * roughness_factor(r, separation_nm);
}

GradientBand build_band(const SystemSpec& spec, double temperature_k,
                        const UncertaintyBudget& budget,
                        const lifshitz::SummationPolicy& policy) {
    const double a = spec.geometry.separation_nm;
    const double radius = spec.geometry.sphere_radius_nm;
    const double rough = roughness_factor(spec.roughness, a);

    const double center =
        rough * evaluate(spec, spec.plate, spec.sphere, temperature_k, policy);

    const bool sheeted = spec.plate.has_sheet() || spec.sphere.has_sheet();
    double hi = center, lo = center;
    if (sheeted) {
        hi = rough * evaluate(spec,
                              shift_sheet(spec.plate, budget.mu_err_ev,
                                          -budget.gap_err_ev),
                              shift_sheet(spec.sphere, budget.mu_err_ev,
                                          -budget.gap_err_ev),
                              temperature_k, policy);
        lo = rough * evaluate(spec,
                              shift_sheet(spec.plate, -budget.mu_err_ev,
                                          budget.gap_err_ev),
                              shift_sheet(spec.sphere, -budget.mu_err_ev,
                                          budget.gap_err_ev),
                              temperature_k, policy);
    }

    double up_scale = (1.0 + budget.radius_err_nm / radius) *
                      (1.0 + budget.optical_rel);
    double lo_scale = (1.0 - budget.radius_err_nm / radius) *
                      (1.0 - budget.optical_rel);
    if (budget.pfa_lower) lo_scale *= 1.0 - a / radius;

    GradientBand band;
    band.center_ev_nm2 = center;
    band.upper_ev_nm2 = std::max(center, hi * up_scale);
    band.lower_ev_nm2 = std::min(center, lo * lo_scale);
    return band;
}

} // namespace casimir::corrections
