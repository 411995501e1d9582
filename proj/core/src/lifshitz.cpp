#include "casimir/lifshitz.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace casimir::lifshitz {

using constants::alpha_fs;
using constants::hbar_c_ev_nm;
using constants::k_b_ev_per_k;
using graphene::SpectralContext;
using graphene::TensorRoute;
using reflection::BoundarySpec;
using reflection::ReflectionPair;
using reflection::TeZeroMode;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kYSpan = 60.0; // e^-60 tail of the momentum integral

using SideEval = std::function<ReflectionPair(const SpectralContext&)>;

// Build the reflection evaluator of one cavity side for a fixed frequency.
// Matsubara order l >= 0 selects the thermal tensor path; l = -1 marks a
// continuous-frequency (zero-temperature) evaluation.  For the closed
// large-frequency form the kperp-independent bracket is computed once here.
SideEval make_side(const BoundarySpec& b, int l, double xi_ev,
                   double temperature_k, TensorRoute route, double tol,
                   TeZeroMode te_mode) {
    switch (b.type()) {
    case BoundarySpec::Type::ideal_metal:
        return [](const SpectralContext&) { return ReflectionPair{1.0, 1.0}; };
    case BoundarySpec::Type::bare: {
        const materials::PermittivityModel m = b.substrate();
        return [m, te_mode](const SpectralContext& ctx) {
            return reflection::fresnel(ctx, m, te_mode);
        };
    }
    case BoundarySpec::Type::coated:
        break;
    }

    const materials::PermittivityModel sub = b.substrate();
    const graphene::GrapheneSheet sheet = b.sheet();

    if (l < 0 || route == TensorRoute::zero_temperature) {
        return [sub, sheet, te_mode](const SpectralContext& ctx) {
            const auto pt = graphene::pt_zero_temperature(ctx.xi_ev,
                                                          ctx.kperp_nm, sheet);
            return reflection::graphene_dressed(ctx, sub, pt, te_mode);
        };
    }
    if (l == 0) {
        return [sub, sheet, temperature_k, tol, te_mode](const SpectralContext& ctx) {
            const auto pt = graphene::pt_l0(ctx.kperp_nm, sheet, temperature_k, tol);
            return reflection::graphene_dressed(ctx, sub, pt, te_mode);
        };
    }
    if (route == TensorRoute::thermal_approx) {
        const double bracket =
            graphene::approx_bracket(xi_ev, temperature_k, sheet, tol);
        const double xic = xi_ev / hbar_c_ev_nm;
        return [sub, sheet, bracket, xic, te_mode](const SpectralContext& ctx) {
            const double kp2 = ctx.kperp_nm * ctx.kperp_nm;
            const graphene::PolarizationPair pt{alpha_fs * kp2 * bracket / xic,
                                                alpha_fs * kp2 * xic * bracket};
            return reflection::graphene_dressed(ctx, sub, pt, te_mode);
        };
    }
    return [sub, sheet, tol, te_mode](const SpectralContext& ctx) {
        auto pt = graphene::pt_order0(ctx, sheet);
        const auto th = graphene::pt_thermal(ctx, sheet, tol);
        pt.pi00_nm += th.pi00_nm;
        pt.pi_nm3 += th.pi_nm3;
        return reflection::graphene_dressed(ctx, sub, pt, te_mode);
    };
}

double side_vf(const BoundarySpec& b) {
    return b.has_sheet() ? b.sheet().vf_ratio : constants::default_vf_ratio;
}

// Momentum integral of one frequency term,
//   I = 1/(8 a^3) * int_{y0}^{y0+60} dy y^2 sum_sigma (r r' e^-y)/(1 - r r' e^-y),
// in 1/nm^3, with y = 2*a*q.
double momentum_integral(double a_nm, int l, double xi_ev, double temperature_k,
                         const BoundarySpec& b1, const BoundarySpec& b2,
                         TensorRoute route, const SummationPolicy& policy,
                         bool tm_only, TeZeroMode te_mode,
                         num::QuadratureResult* track) {
    const double tol = policy.quadrature_tol;
    const SideEval s1 = make_side(b1, l, xi_ev, temperature_k, route, tol, te_mode);
    const SideEval s2 = make_side(b2, l, xi_ev, temperature_k, route, tol, te_mode);
    const double xic = xi_ev / hbar_c_ev_nm;
    const double vf1 = side_vf(b1);
    const double vf2 = side_vf(b2);

    const auto integrand = [&](double y) {
        if (y > 700.0) return 0.0; // exp(-y) underflows; the tail is dead
        const double q = y / (2.0 * a_nm);
        const double kp2 = q * q - xic * xic;
        if (kp2 <= 0.0) return 0.0;
        const double kp = std::sqrt(kp2);

        SpectralContext ctx;
        ctx.l = l;
        ctx.xi_ev = xi_ev;
        ctx.kperp_nm = kp;
        ctx.q_nm = q;
        ctx.temperature_k = temperature_k;

        ctx.q_tilde_nm = std::hypot(vf1 * kp, xic);
        const ReflectionPair r1 = s1(ctx);
        ctx.q_tilde_nm = std::hypot(vf2 * kp, xic);
        const ReflectionPair r2 = s2(ctx);

        const double damp = std::exp(-y);
        const double ptm = r1.tm * r2.tm * damp;
        double sum = ptm / (1.0 - ptm);
        if (!tm_only) {
            const double pte = r1.te * r2.te * damp;
            sum += pte / (1.0 - pte);
        }
        return y * y * sum;
    };

    const double y0 = 2.0 * a_nm * xic;
    num::QuadratureOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = tol;
    opt.initial_panels = 4;
    const num::QuadratureResult r = num::integrate(integrand, y0, y0 + kYSpan, opt);
    if (track) {
        track->error += r.error;
        track->evals += r.evals;
    }
    return r.value / (8.0 * a_nm * a_nm * a_nm);
}

struct MatsubaraSum {
    double total_nm3 = 0.0;
    double zero_nm3 = 0.0;
    double error_nm3 = 0.0;
    int l_used = 0;
    bool converged = true;
};

// Primed Matsubara sum sum'_l I_l (the l = 0 term enters halved).
// Truncated when a geometric tail estimate from the last three terms stays
// below rel_tol of the running sum twice in a row.
MatsubaraSum matsubara_sum(double a_nm, double temperature_k,
                           const BoundarySpec& b1, const BoundarySpec& b2,
                           const SummationPolicy& policy, TensorRoute route,
                           bool tm_only, TeZeroMode te_mode) {
    if (!(a_nm > 0.0))
        throw std::invalid_argument("lifshitz: separation must be positive");
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("lifshitz: temperature must be positive");
    if (!(policy.rel_tol > 0.0 && policy.rel_tol < 1e-3))
        throw std::invalid_argument("lifshitz: rel_tol out of range (0, 1e-3)");
    if (!(policy.quadrature_tol > 0.0 && policy.quadrature_tol < 1e-3))
        throw std::invalid_argument("lifshitz: quadrature_tol out of range (0, 1e-3)");

    num::QuadratureResult track;
    MatsubaraSum out;
    const double i0 = momentum_integral(a_nm, 0, 0.0, temperature_k, b1, b2,
                                        route, policy, tm_only, te_mode, &track);
    out.zero_nm3 = 0.5 * i0;
    out.total_nm3 = out.zero_nm3;

    double prev2 = 0.0, prev1 = 0.0;
    int ok_streak = 0;
    for (int l = 1; l <= policy.l_max_cap; ++l) {
        const double xi = constants::matsubara_energy_ev(l, temperature_k);
        if (2.0 * a_nm * xi / hbar_c_ev_nm > 200.0) {
            out.l_used = l;
            break; // exp(-200): the remainder underflows any tolerance
        }
        const double term = momentum_integral(a_nm, l, xi, temperature_k, b1, b2,
                                              route, policy, tm_only, te_mode,
                                              &track);
        out.total_nm3 += term;
        out.l_used = l;

        if (l >= 3 && prev2 > 0.0 && prev1 > 0.0 && term > 0.0) {
            const double ratio = std::max(term / prev1, prev1 / prev2);
            if (ratio < 1.0) {
                const double tail = term * ratio / (1.0 - ratio);
                if (tail < policy.rel_tol * out.total_nm3) {
                    if (++ok_streak >= 2) {
                        out.error_nm3 += tail;
                        break;
                    }
                } else {
                    ok_streak = 0;
                }
            } else {
                ok_streak = 0;
            }
        }
        if (term == 0.0 && l >= 2) break;
        prev2 = prev1;
        prev1 = term;
        if (l == policy.l_max_cap) out.converged = false;
    }
    out.error_nm3 += track.error / (8.0 * a_nm * a_nm * a_nm);
    return out;
}

void validate_geometry(const SystemGeometry& g) {
    if (!(g.sphere_radius_nm > 0.0))
        throw std::invalid_argument("lifshitz: sphere radius must be positive");
    if (!(g.separation_nm > 0.0))
        throw std::invalid_argument("lifshitz: separation must be positive");
    if (!(g.separation_nm < g.sphere_radius_nm))
        throw std::invalid_argument("lifshitz: proximity approximation needs a << R");
}

} // namespace

GradientResult gradient_finite_T(const SystemGeometry& geom,
                                 const BoundarySpec& plate,
                                 const BoundarySpec& sphere,
                                 double temperature_k,
                                 const SummationPolicy& policy,
                                 TensorRoute route, TeZeroMode te_mode) {
    validate_geometry(geom);
    const MatsubaraSum s =
        matsubara_sum(geom.separation_nm, temperature_k, plate, sphere, policy,
                      route, false, te_mode);
    const double scale =
        2.0 * k_b_ev_per_k * temperature_k * geom.sphere_radius_nm;
    GradientResult r;
    r.value_ev_nm2 = scale * s.total_nm3;
    r.error_ev_nm2 = scale * s.error_nm3;
    r.l_used = s.l_used;
    r.converged = s.converged;
    return r;
}

GradientResult gradient_zero_T(const SystemGeometry& geom,
                               const BoundarySpec& plate,
                               const BoundarySpec& sphere,
                               const SummationPolicy& policy,
                               TeZeroMode te_mode) {
    validate_geometry(geom);
    const double a = geom.separation_nm;

    const auto g_of_e = [&](double xi_ev) {
        return momentum_integral(a, -1, xi_ev, 0.0, plate, sphere,
                                 TensorRoute::zero_temperature, policy, false,
                                 te_mode, nullptr);
    };
    // Logarithmic frequency variable with panel knots at decade boundaries.
    const auto integrand = [&](double t) {
        const double e = std::exp(t);
        return g_of_e(e) * e;
    };
    const double t_lo = std::log(1e-5);
    const double t_hi = std::log(1e3);
    std::vector<double> knots;
    for (double d = -4.0; d <= 2.0; d += 1.0)
        knots.push_back(d * std::log(10.0));

    num::QuadratureOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = policy.rel_tol;
    opt.max_depth = 40;
    const num::QuadratureResult j =
        num::integrate_split(integrand, t_lo, t_hi, knots.data(), knots.size(), opt);

    GradientResult r;
    const double scale = geom.sphere_radius_nm / kPi;
    r.value_ev_nm2 = scale * j.value;
    r.error_ev_nm2 = scale * j.error;
    r.l_used = 0;
    r.converged = true;
    return r;
}

ThermalCorrection thermal_correction(const SystemGeometry& geom,
                                     const BoundarySpec& plate,
                                     const BoundarySpec& sphere,
                                     double temperature_k,
                                     const SummationPolicy& policy,
                                     TeZeroMode te_mode) {
    const GradientResult ft =
        gradient_finite_T(geom, plate, sphere, temperature_k, policy,
                          TensorRoute::thermal_approx, te_mode);
    const GradientResult f0 = gradient_zero_T(geom, plate, sphere, policy, te_mode);
    ThermalCorrection c;
    c.f_t_ev_nm2 = ft.value_ev_nm2;
    c.f_0_ev_nm2 = f0.value_ev_nm2;
    c.delta_ev_nm2 = ft.value_ev_nm2 - f0.value_ev_nm2;
    c.delta_rel = c.delta_ev_nm2 / f0.value_ev_nm2;
    return c;
}

ThermalCorrection thermal_correction_implicit(const SystemGeometry& geom,
                                              const BoundarySpec& plate,
                                              const BoundarySpec& sphere,
                                              double temperature_k,
                                              const SummationPolicy& policy,
                                              TeZeroMode te_mode) {
    const GradientResult ft =
        gradient_finite_T(geom, plate, sphere, temperature_k, policy,
                          TensorRoute::zero_temperature, te_mode);
    const GradientResult f0 = gradient_zero_T(geom, plate, sphere, policy, te_mode);
    ThermalCorrection c;
    c.f_t_ev_nm2 = ft.value_ev_nm2;
    c.f_0_ev_nm2 = f0.value_ev_nm2;
    c.delta_ev_nm2 = ft.value_ev_nm2 - f0.value_ev_nm2;
    c.delta_rel = c.delta_ev_nm2 / f0.value_ev_nm2;
    return c;
}

PressureResult pressure_plate_plate(const BoundarySpec& b1,
                                    const BoundarySpec& b2,
                                    double separation_nm, double temperature_k,
                                    const SummationPolicy& policy,
                                    TensorRoute route, bool tm_only,
                                    TeZeroMode te_mode) {
    const MatsubaraSum s = matsubara_sum(separation_nm, temperature_k, b1, b2,
                                         policy, route, tm_only, te_mode);
    const double scale = k_b_ev_per_k * temperature_k / kPi;
    PressureResult r;
    r.pressure_ev_nm3 = scale * s.total_nm3;
    r.zero_mode_ev_nm3 = scale * s.zero_nm3;
    r.error_ev_nm3 = scale * s.error_nm3;
    r.l_used = s.l_used;
    r.converged = s.converged;
    return r;
}

double thermal_regime_threshold(const BoundarySpec& b1, const BoundarySpec& b2,
                                double temperature_k, double fraction,
                                const SummationPolicy& policy,
                                TensorRoute route, TeZeroMode te_mode) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("thermal_regime_threshold: fraction in (0, 1)");

    const auto share = [&](double a) {
        return pressure_plate_plate(b1, b2, a, temperature_k, policy, route,
                                    false, te_mode)
            .zero_mode_fraction();
    };

    const double a_lo = 50.0, a_hi = 20000.0;
    const int n_probe = 25;
    std::vector<double> grid(n_probe), val(n_probe);
    const double step = std::log(a_hi / a_lo) / (n_probe - 1);
    for (int i = 0; i < n_probe; ++i) {
        grid[i] = a_lo * std::exp(i * step);
        val[i] = share(grid[i]);
        if (i > 0 && val[i] < val[i - 1] - 1e-6)
            throw NumericsError("zero-mode share is not monotone on the probe grid",
                                val[i - 1] - val[i], 1e-6);
    }
    if (val.front() >= fraction)
        throw NumericsError("threshold below the probe range", val.front(), fraction);
    if (val.back() < fraction)
        throw NumericsError("threshold beyond the probe range", val.back(), fraction);

    int idx = 0;
    while (val[idx + 1] < fraction) ++idx;
    double lo = grid[idx], hi = grid[idx + 1];
    while ((hi - lo) > 0.01 * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        (share(mid) >= fraction ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

EffectiveTemperatures effective_temperatures(double separation_nm,
                                             double vf_ratio) {
    if (!(separation_nm > 0.0))
        throw std::invalid_argument("effective_temperatures: separation must be positive");
    EffectiveTemperatures t;
    t.photon_k = hbar_c_ev_nm / (2.0 * separation_nm * k_b_ev_per_k);
    t.dirac_k = t.photon_k * vf_ratio;
    return t;
}

} // namespace casimir::lifshitz
