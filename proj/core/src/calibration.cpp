#include "casimir/calibration.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace casimir::calibration {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Mat2 = std::array<double, 4>;
using Mat3 = std::array<double, 9>;

std::array<double, 2> solve2(const Mat2& m, const std::array<double, 2>& b) {
    const double det = m[0] * m[3] - m[1] * m[2];
    if (std::abs(det) < 1e-300)
        throw NumericsError("calibration: singular 2x2 system", std::abs(det), 1e-300);
    return {(b[0] * m[3] - b[1] * m[1]) / det,
            (m[0] * b[1] - m[2] * b[0]) / det};
}

Mat3 invert3(const Mat3& m) {
    Mat3 inv;
    inv[0] = m[4] * m[8] - m[5] * m[7];
    inv[1] = m[2] * m[7] - m[1] * m[8];
    inv[2] = m[1] * m[5] - m[2] * m[4];
    inv[3] = m[5] * m[6] - m[3] * m[8];
    inv[4] = m[0] * m[8] - m[2] * m[6];
    inv[5] = m[2] * m[3] - m[0] * m[5];
    inv[6] = m[3] * m[7] - m[4] * m[6];
    inv[7] = m[1] * m[6] - m[0] * m[7];
    inv[8] = m[0] * m[4] - m[1] * m[3];
    const double det = m[0] * inv[0] + m[1] * inv[3] + m[2] * inv[6];
    if (std::abs(det) < 1e-300)
        throw ConfigError("calibration: rank-deficient voltage design");
    for (double& v : inv) v /= det;
    return inv;
}

std::array<double, 3> mul3(const Mat3& m, const std::array<double, 3>& v) {
    return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
            m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
            m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

struct VoltagePoint {
    double v;
    double dw;
};

struct SeparationGroup {
    double z_nm = 0.0;
    std::vector<VoltagePoint> pts;
};

// Records keyed by piezo position at fixed resolution; map order makes the
// whole pipeline deterministic.
std::map<long long, SeparationGroup> group_by_z(const std::vector<ShiftRecord>& rs) {
    std::map<long long, SeparationGroup> groups;
    for (const auto& r : rs) {
        if (!std::isfinite(r.z_piezo_nm) || !std::isfinite(r.voltage_v) ||
            !std::isfinite(r.delta_omega_rad_s))
            throw ConfigError("calibration: non-finite shift record");
        const long long key = llround(r.z_piezo_nm * 1e6);
        auto& g = groups[key];
        g.z_nm = r.z_piezo_nm;
        g.pts.push_back({r.voltage_v, r.delta_omega_rad_s});
    }
    return groups;
}

struct Parabola {
    double b0 = 0, b1 = 0, b2 = 0;
    double var_b1 = 0, var_b2 = 0, cov_b12 = 0;
    double vertex_v = 0, var_vertex = 0;
};

Parabola fit_parabola(const SeparationGroup& g, double sigma) {
    std::set<long long> distinct;
    for (const auto& p : g.pts) distinct.insert(llround(p.v * 1e9));
    if (distinct.size() < 3)
        throw ConfigError("calibration: need at least 3 distinct voltages per separation");

    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    const double s0 = static_cast<double>(g.pts.size());
    for (const auto& p : g.pts) {
        const double v = p.v, v2 = v * v;
        s1 += v;
        s2 += v2;
        s3 += v2 * v;
        s4 += v2 * v2;
        t0 += p.dw;
        t1 += v * p.dw;
        t2 += v2 * p.dw;
    }
    const Mat3 m{s0, s1, s2, s1, s2, s3, s2, s3, s4};
    const Mat3 inv = invert3(m);
    const auto beta = mul3(inv, {t0, t1, t2});

    Parabola out;
    out.b0 = beta[0];
    out.b1 = beta[1];
    out.b2 = beta[2];
    const double sg2 = sigma * sigma;
    out.var_b1 = sg2 * inv[4];
    out.var_b2 = sg2 * inv[8];
    out.cov_b12 = sg2 * inv[5];
    if (out.b2 == 0.0)
        throw NumericsError("calibration: flat parabola, vertex undefined", 0.0, 0.0);
    out.vertex_v = -out.b1 / (2.0 * out.b2);
    const double dv1 = -1.0 / (2.0 * out.b2);
    const double dv2 = out.b1 / (2.0 * out.b2 * out.b2);
    out.var_vertex = dv1 * dv1 * out.var_b1 + dv2 * dv2 * out.var_b2 +
                     2.0 * dv1 * dv2 * out.cov_b12;
    return out;
}

double xprime_slope(double a_nm, double radius_nm) {
    const double h = 0.5;
    return (electrostatic_gradient_factor(a_nm + h, radius_nm) -
            electrostatic_gradient_factor(a_nm - h, radius_nm)) /
           (2.0 * h);
}

struct CurvatureFit {
    double z0 = 0, c = 0;
    double z0_err = 0, c_err = 0;
};

// Weighted least squares of the parabola curvatures against -C X'(z + z0, R);
// coarse z0 scan (C is linear at fixed z0) followed by damped Gauss-Newton.
CurvatureFit fit_curvatures(const std::vector<double>& z_nm,
                            const std::vector<double>& kappa,
                            const std::vector<double>& w, double radius_nm) {
    const size_t n = z_nm.size();
    const auto chi2_of = [&](double z0, double c) {
        double s = 0;
        for (size_t i = 0; i < n; ++i) {
            const double r = kappa[i] + c * electrostatic_gradient_factor(
                                                z_nm[i] + z0, radius_nm);
            s += w[i] * r * r;
        }
        return s;
    };
    const auto best_c = [&](double z0) {
        double num = 0, den = 0;
        for (size_t i = 0; i < n; ++i) {
            const double x = electrostatic_gradient_factor(z_nm[i] + z0, radius_nm);
            num += w[i] * kappa[i] * x;
            den += w[i] * x * x;
        }
        return -num / den;
    };

    double z0 = 10.0, c = best_c(10.0), best = chi2_of(z0, c);
    for (double probe = 20.0; probe <= 2000.0; probe += 10.0) {
        const double cc = best_c(probe);
        const double s = chi2_of(probe, cc);
        if (s < best) {
            best = s;
            z0 = probe;
            c = cc;
        }
    }

    double lambda = 1e-3;
    double chi2 = chi2_of(z0, c);
    int stall = 0;
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        Mat2 h{0, 0, 0, 0};
        std::array<double, 2> grad{0, 0};
        for (size_t i = 0; i < n; ++i) {
            const double a = z_nm[i] + z0;
            const double x = electrostatic_gradient_factor(a, radius_nm);
            const double g0 = -c * xprime_slope(a, radius_nm); // d model / d z0
            const double g1 = -x;                              // d model / d C
            const double res = kappa[i] + c * x;
            h[0] += w[i] * g0 * g0;
            h[1] += w[i] * g0 * g1;
            h[2] += w[i] * g1 * g0;
            h[3] += w[i] * g1 * g1;
            grad[0] += w[i] * g0 * res;
            grad[1] += w[i] * g1 * res;
        }
        const Mat2 damped{h[0] * (1.0 + lambda), h[1], h[2], h[3] * (1.0 + lambda)};
        const auto step = solve2(damped, grad);
        const double z0_try = z0 + step[0];
        const double c_try = c + step[1];
        const double chi2_try = (z0_try > -1e4) ? chi2_of(z0_try, c_try)
                                                : chi2 + 1.0;
        if (chi2_try <= chi2) {
            const bool small = std::abs(step[0]) < 1e-9 &&
                               std::abs(step[1]) < 1e-12 * std::abs(c_try);
            if (chi2 - chi2_try < 1e-14 * (1.0 + chi2) || small) {
                if (++stall >= 2) converged = true;
            } else {
                stall = 0;
            }
            z0 = z0_try;
            c = c_try;
            chi2 = chi2_try;
            lambda = std::max(lambda / 3.0, 1e-12);
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) converged = true; // stuck at a flat optimum
        }
    }
    if (!converged)
        throw NumericsError("calibration: curvature fit did not converge", chi2, 0.0);

    Mat2 h{0, 0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
        const double a = z_nm[i] + z0;
        const double g0 = -c * xprime_slope(a, radius_nm);
        const double g1 = -electrostatic_gradient_factor(a, radius_nm);
        h[0] += w[i] * g0 * g0;
        h[1] += w[i] * g0 * g1;
        h[2] += w[i] * g1 * g0;
        h[3] += w[i] * g1 * g1;
    }
    const double det = h[0] * h[3] - h[1] * h[2];
    CurvatureFit out;
    out.z0 = z0;
    out.c = c;
    out.z0_err = std::sqrt(std::max(0.0, h[3] / det));
    out.c_err = std::sqrt(std::max(0.0, h[0] / det));
    return out;
}

// Joint fit with one shared V0: chi^2 over every reading, with one free
// offset per separation profiled out analytically.
void refine_shared_v0(const std::map<long long, SeparationGroup>& groups,
                      double radius_nm, double sigma, double& z0, double& c,
                      double& v0, double& z0_err, double& c_err, double& v0_err) {
    struct Flat {
        double z, v, dw;
        size_t grp;
    };
    std::vector<Flat> pts;
    std::vector<size_t> grp_size;
    for (const auto& [key, g] : groups) {
        (void)key;
        const size_t gi = grp_size.size();
        for (const auto& p : g.pts) pts.push_back({g.z_nm, p.v, p.dw, gi});
        grp_size.push_back(g.pts.size());
    }
    const size_t ng = grp_size.size();

    const auto chi2_of = [&](double z0q, double cq, double v0q) {
        std::vector<double> mean(ng, 0.0);
        std::vector<double> e(pts.size());
        for (size_t k = 0; k < pts.size(); ++k) {
            const double x = electrostatic_gradient_factor(pts[k].z + z0q, radius_nm);
            const double dv = pts[k].v - v0q;
            e[k] = pts[k].dw + cq * x * dv * dv;
            mean[pts[k].grp] += e[k];
        }
        for (size_t gi = 0; gi < ng; ++gi) mean[gi] /= static_cast<double>(grp_size[gi]);
        double s = 0;
        for (size_t k = 0; k < pts.size(); ++k) {
            const double r = e[k] - mean[pts[k].grp];
            s += r * r;
        }
        return s;
    };

    double lambda = 1e-3;
    double chi2 = chi2_of(z0, c, v0);
    int stall = 0;
    bool converged = false;
    Mat3 h{};
    for (int it = 0; it < 200 && !converged; ++it) {
        h = Mat3{};
        std::array<double, 3> grad{0, 0, 0};
        std::vector<std::array<double, 4>> mean(ng, {0, 0, 0, 0}); // e, de/dz0, de/dC, de/dV0
        std::vector<std::array<double, 4>> raw(pts.size());
        for (size_t k = 0; k < pts.size(); ++k) {
            const double a = pts[k].z + z0;
            const double x = electrostatic_gradient_factor(a, radius_nm);
            const double dx = xprime_slope(a, radius_nm);
            const double dv = pts[k].v - v0;
            raw[k] = {pts[k].dw + c * x * dv * dv, c * dx * dv * dv,
                      x * dv * dv, -2.0 * c * x * dv};
            for (int j = 0; j < 4; ++j) mean[pts[k].grp][j] += raw[k][j];
        }
        for (size_t gi = 0; gi < ng; ++gi)
            for (int j = 0; j < 4; ++j) mean[gi][j] /= static_cast<double>(grp_size[gi]);
        for (size_t k = 0; k < pts.size(); ++k) {
            const double r = raw[k][0] - mean[pts[k].grp][0];
            const std::array<double, 3> u{raw[k][1] - mean[pts[k].grp][1],
                                          raw[k][2] - mean[pts[k].grp][2],
                                          raw[k][3] - mean[pts[k].grp][3]};
            for (int p = 0; p < 3; ++p) {
                grad[p] -= u[p] * r;
                for (int q = 0; q < 3; ++q) h[3 * p + q] += u[p] * u[q];
            }
        }
        Mat3 damped = h;
        for (int p = 0; p < 3; ++p) damped[3 * p + p] *= 1.0 + lambda;
        const auto step = mul3(invert3(damped), grad);
        const double chi2_try = chi2_of(z0 + step[0], c + step[1], v0 + step[2]);
        if (chi2_try <= chi2) {
            if (chi2 - chi2_try < 1e-14 * (1.0 + chi2)) {
                if (++stall >= 2) converged = true;
            } else {
                stall = 0;
            }
            z0 += step[0];
            c += step[1];
            v0 += step[2];
            chi2 = chi2_try;
            lambda = std::max(lambda / 3.0, 1e-12);
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) converged = true;
        }
    }
    if (!converged)
        throw NumericsError("calibration: shared-V0 fit did not converge", chi2, 0.0);

    const Mat3 cov = invert3(h);
    const double sg2 = sigma * sigma;
    z0_err = std::sqrt(std::max(0.0, sg2 * cov[0]));
    c_err = std::sqrt(std::max(0.0, sg2 * cov[4]));
    v0_err = std::sqrt(std::max(0.0, sg2 * cov[8]));
}

} // namespace

double electrostatic_gradient_factor(double a_nm, double radius_nm) {
    if (!(a_nm > 0.0) || !(radius_nm > 0.0) || !(a_nm < radius_nm))
        throw std::invalid_argument("electrostatic_gradient_factor: need 0 < a < R");
    const double a = a_nm * 1e-9;
    const double radius = radius_nm * 1e-9;
    const double tau = std::acosh(1.0 + a / radius);
    const double coth_tau = 1.0 / std::tanh(tau);
    const double csch_tau = 1.0 / std::sinh(tau);
    const double csch2_tau = csch_tau * csch_tau;

    double sum = 0.0;
    bool converged = false;
    for (long n = 1; n <= 2000000; ++n) {
        const double nt = static_cast<double>(n) * tau;
        if (nt > 700.0) {
            converged = true; // remaining terms underflow
            break;
        }
        const double cschn = 1.0 / std::sinh(nt);
        const double cothn = 1.0 / std::tanh(nt);
        const double nn = static_cast<double>(n);
        const double term =
            cschn * (nn * cothn * (nn * cothn - coth_tau) - csch2_tau +
                     nn * nn * cschn * cschn);
        sum += term;
        if (n > 2 && std::abs(term) < 1e-12 * std::abs(sum)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericsError("electrostatic_gradient_factor: series did not converge",
                            tau, 1e-12);
    return 2.0 * kPi * constants::eps0_f_per_m /
           std::sqrt(a * (2.0 * radius + a)) * sum;
}

double frequency_shift_forward(double a_nm, double radius_nm, double v_applied,
                               double v0_v, double cal_const_s_per_kg,
                               double casimir_gradient_n_per_m) {
    const double dv = v_applied - v0_v;
    const double el = electrostatic_gradient_factor(a_nm, radius_nm) * dv * dv;
    return -cal_const_s_per_kg * (el + casimir_gradient_n_per_m);
}

CalibrationFit fit_calibration(const std::vector<ShiftRecord>& records,
                               double radius_nm, const FitOptions& opt) {
    const auto groups = group_by_z(records);
    if (groups.size() < 10)
        throw ConfigError("fit_calibration: need at least 10 distinct separations");

    std::vector<double> z_nm, kappa, w, vertices, var_vertices;
    for (const auto& [key, g] : groups) {
        (void)key;
        const Parabola p = fit_parabola(g, opt.pll_sigma_rad_s);
        z_nm.push_back(g.z_nm);
        kappa.push_back(p.b2);
        w.push_back(p.var_b2 > 0.0 ? 1.0 / p.var_b2 : 1.0);
        vertices.push_back(p.vertex_v);
        var_vertices.push_back(p.var_vertex);
    }

    CurvatureFit cf = fit_curvatures(z_nm, kappa, w, radius_nm);

    CalibrationFit fit;
    const size_t n = vertices.size();
    double mean_v = 0;
    for (double v : vertices) mean_v += v;
    mean_v /= static_cast<double>(n);

    if (opt.casimir_model_free) {
        fit.z0_nm = cf.z0;
        fit.z0_err_nm = cf.z0_err;
        fit.c_s_per_kg = cf.c;
        fit.c_err = cf.c_err;
        fit.v0_v = mean_v;
        double ss = 0;
        for (double v : vertices) ss += (v - mean_v) * (v - mean_v);
        fit.v0_err_v = n > 1 ? std::sqrt(ss / (static_cast<double>(n) *
                                               (static_cast<double>(n) - 1)))
                             : std::sqrt(var_vertices.front());

        // Straight line V0(a) = d + theta a at the fitted separations.
        double sa = 0, saa = 0, sv = 0, sav = 0;
        for (size_t i = 0; i < n; ++i) {
            const double a = z_nm[i] + cf.z0;
            sa += a;
            saa += a * a;
            sv += vertices[i];
            sav += a * vertices[i];
        }
        const double nn = static_cast<double>(n);
        const double den = nn * saa - sa * sa;
        fit.line_theta_v_per_nm = (nn * sav - sa * sv) / den;
        fit.line_d_v = (sv - fit.line_theta_v_per_nm * sa) / nn;
    } else {
        double z0 = cf.z0, c = cf.c, v0 = mean_v;
        double ez = 0, ec = 0, ev = 0;
        refine_shared_v0(groups, radius_nm, opt.pll_sigma_rad_s, z0, c, v0, ez,
                         ec, ev);
        fit.z0_nm = z0;
        fit.z0_err_nm = ez;
        fit.c_s_per_kg = c;
        fit.c_err = ec;
        fit.v0_v = v0;
        fit.v0_err_v = ev;
        fit.line_d_v = v0;
        fit.line_theta_v_per_nm = 0.0;
    }
    return fit;
}

std::vector<GradientSample> extract_casimir(const std::vector<ShiftRecord>& records,
                                            const CalibrationFit& fit,
                                            double radius_nm,
                                            const ExtractOptions& opt) {
    if (!(fit.c_s_per_kg > 0.0))
        throw ConfigError("extract_casimir: calibration constant must be positive");

    struct Acc {
        double z = 0;
        std::vector<double> f;
    };
    std::map<std::pair<long long, int>, Acc> groups;
    for (const auto& r : records) {
        const long long key = llround(r.z_piezo_nm * 1e6);
        auto& g = groups[{key, r.set_id}];
        g.z = r.z_piezo_nm;
        const double a = r.z_piezo_nm + fit.z0_nm;
        const double dv = r.voltage_v - fit.v0_v;
        const double el = electrostatic_gradient_factor(a, radius_nm) * dv * dv;
        g.f.push_back(-r.delta_omega_rad_s / fit.c_s_per_kg - el);
    }

    const double sys_n_per_m = opt.pll_sigma_rad_s / fit.c_s_per_kg;
    struct SetStat {
        double mean, err;
    };
    std::map<long long, std::vector<SetStat>> by_z;
    std::map<long long, double> z_of;
    for (const auto& [key, g] : groups) {
        double mean = 0;
        for (double f : g.f) mean += f;
        mean /= static_cast<double>(g.f.size());
        double sem = 0;
        if (g.f.size() > 1) {
            double ss = 0;
            for (double f : g.f) ss += (f - mean) * (f - mean);
            sem = std::sqrt(ss / (static_cast<double>(g.f.size()) *
                                  (static_cast<double>(g.f.size()) - 1)));
        }
        const double err = std::hypot(sem, sys_n_per_m);
        by_z[key.first].push_back({mean, err});
        z_of[key.first] = g.z;
    }

    std::vector<GradientSample> out;
    out.reserve(by_z.size());
    for (const auto& [zkey, stats] : by_z) {
        double mean = 0, err = 0;
        for (const auto& s : stats) {
            mean += s.mean;
            err += s.err;
        }
        mean /= static_cast<double>(stats.size());
        err /= static_cast<double>(stats.size());
        GradientSample s;
        s.a_nm = z_of[zkey] + fit.z0_nm;
        s.gradient_un_per_m = mean * 1e6;
        s.err_gradient_un_per_m = err * 1e6;
        s.err_a_nm = opt.err_a_nm;
        out.push_back(s);
    }
    return out;
}

} // namespace casimir::calibration
