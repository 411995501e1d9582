#include "casimir/reflection.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::reflection {

using constants::hbar_c_ev_nm;
using graphene::SpectralContext;

namespace {

// Longitudinal momentum inside the material, k = sqrt(kperp^2 + eps*xi^2/c^2).
// At xi = 0 the product eps*xi^2 is replaced by its limit, which survives
// only for plasma-like metals.
double longitudinal_k(const SpectralContext& ctx,
                      const materials::PermittivityModel& m,
                      TeZeroMode te_mode, double eps) {
    const double xic = ctx.xi_ev / hbar_c_ev_nm;
    if (ctx.xi_ev > 0.0)
        return std::sqrt(ctx.kperp_nm * ctx.kperp_nm + eps * xic * xic);
    double exi2 = 0.0;
    if (m.is_metal() && te_mode == TeZeroMode::plasma)
        exi2 = m.plasma_energy_ev() * m.plasma_energy_ev();
    const double pc = std::sqrt(exi2) / hbar_c_ev_nm;
    return std::hypot(ctx.kperp_nm, pc);
}

} // namespace

BoundarySpec BoundarySpec::bare(materials::PermittivityModel substrate) {
    BoundarySpec b;
    b.type_ = Type::bare;
    b.substrate_ = std::move(substrate);
    return b;
}

BoundarySpec BoundarySpec::coated(materials::PermittivityModel substrate,
                                  graphene::GrapheneSheet sheet) {
    BoundarySpec b;
    b.type_ = Type::coated;
    b.substrate_ = std::move(substrate);
    b.sheet_ = sheet;
    return b;
}

BoundarySpec BoundarySpec::freestanding(graphene::GrapheneSheet sheet) {
    return coated(materials::PermittivityModel::vacuum(), sheet);
}

BoundarySpec BoundarySpec::ideal_metal() {
    BoundarySpec b;
    b.type_ = Type::ideal_metal;
    return b;
}

ReflectionPair fresnel(const SpectralContext& ctx,
                       const materials::PermittivityModel& m,
                       TeZeroMode te_mode) {
    if (!(ctx.kperp_nm > 0.0) && !(ctx.xi_ev > 0.0))
        throw std::invalid_argument("fresnel: kperp and xi cannot both vanish");
    const double eps = m.eps(ctx.xi_ev);
    const double q = ctx.q_nm;
    const double k = longitudinal_k(ctx, m, te_mode, eps);
    return {(eps * q - k) / (eps * q + k), (q - k) / (q + k)};
}

ReflectionPair graphene_dressed(const SpectralContext& ctx,
                                const materials::PermittivityModel& substrate,
                                const graphene::PolarizationPair& pt,
                                TeZeroMode te_mode) {
    if (!(ctx.kperp_nm > 0.0))
        throw std::invalid_argument("graphene_dressed: requires kperp > 0");
    const double eps = substrate.eps(ctx.xi_ev);
    const double q = ctx.q_nm;
    const double k = longitudinal_k(ctx, substrate, te_mode, eps);
    const double kp2 = ctx.kperp_nm * ctx.kperp_nm;

    const double qk_pi00 = q * k * pt.pi00_nm;
    const double tm = (kp2 * (eps * q - k) + qk_pi00) /
                      (kp2 * (eps * q + k) + qk_pi00);
    const double te = (kp2 * (q - k) - pt.pi_nm3) /
                      (kp2 * (q + k) + pt.pi_nm3);
    return {tm, te};
}

ReflectionPair boundary_reflection(const SpectralContext& ctx,
                                   const BoundarySpec& b,
                                   graphene::TensorRoute route,
                                   double quad_tol, TeZeroMode te_mode) {
    switch (b.type()) {
    case BoundarySpec::Type::ideal_metal:
        return {1.0, 1.0};
    case BoundarySpec::Type::bare:
        return fresnel(ctx, b.substrate(), te_mode);
    case BoundarySpec::Type::coated: {
        const graphene::PolarizationPair pt =
            ctx.l < 0 ? graphene::pt_zero_temperature(ctx.xi_ev, ctx.kperp_nm,
                                                      b.sheet())
                      : graphene::pt_total(ctx, b.sheet(), route, quad_tol);
        return graphene_dressed(ctx, b.substrate(), pt, te_mode);
    }
    }
    return {};
}

double te_zero_mode_magnitude(const BoundarySpec& b, double temperature_k,
                              double kperp_lo_nm, double kperp_hi_nm,
                              int n_grid, TeZeroMode te_mode) {
    if (!(kperp_hi_nm > kperp_lo_nm && kperp_lo_nm > 0.0))
        throw std::invalid_argument("te_zero_mode_magnitude: bad kperp range");
    if (n_grid < 2) throw std::invalid_argument("te_zero_mode_magnitude: n_grid < 2");
    const double vf = b.has_sheet() ? b.sheet().vf_ratio
                                    : constants::default_vf_ratio;
    double worst = 0.0;
    const double step = std::log(kperp_hi_nm / kperp_lo_nm) / (n_grid - 1);
    for (int i = 0; i < n_grid; ++i) {
        const double kp = kperp_lo_nm * std::exp(i * step);
        const auto ctx = graphene::make_context(0, temperature_k, kp, vf);
        const ReflectionPair r = boundary_reflection(
            ctx, b, graphene::TensorRoute::thermal_exact, 1e-9, te_mode);
        worst = std::max(worst, std::abs(r.te));
    }
    return worst;
}

} // namespace casimir::reflection
