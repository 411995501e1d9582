#pragma once

#include <vector>

namespace casimir::calibration {

// One PLL reading: piezo extension, applied tip voltage, frequency shift.
struct ShiftRecord {
    double z_piezo_nm = 0.0;
    double voltage_v = 0.0;
    double delta_omega_rad_s = 0.0;
    int set_id = 1;
    int run_id = 0;
};

struct CalibrationFit {
    double v0_v = 0.0;
    double v0_err_v = 0.0;
    double z0_nm = 0.0;
    double z0_err_nm = 0.0;
    double c_s_per_kg = 0.0;
    double c_err = 0.0;
    // Straight-line fit of the per-separation residual potential, V0(a) = d + theta a.
    double line_d_v = 0.0;
    double line_theta_v_per_nm = 0.0;
};

struct GradientSample {
    double a_nm = 0.0;
    double gradient_un_per_m = 0.0;
    double err_gradient_un_per_m = 0.0;
    double err_a_nm = 0.0;
};

struct FitOptions {
    // True fits each separation's voltage parabola independently so the
    // Casimir contribution never enters the calibration (the vertex offsets
    // absorb it).  False instead fits one shared V0 jointly across all
    // separations, profiling out a free offset per separation.
    bool casimir_model_free = true;
    double pll_sigma_rad_s = 55.3e-3;
};

struct ExtractOptions {
    double pll_sigma_rad_s = 55.3e-3;
    double err_a_nm = 0.6;
};

// Gradient of the sphere-plate electrostatic force per squared volt,
// X'(a, R) in N/(m V^2).  Bispherical image series with cosh(tau) = 1 + a/R,
// summed until the running term falls below 1e-12 of the partial sum.
double electrostatic_gradient_factor(double a_nm, double radius_nm);

// Forward model of the PLL response,
//   delta_omega = -C [X'(a,R) (V - V0)^2 + F'],
// with the Casimir gradient F' in N/m.  Result in rad/s.
double frequency_shift_forward(double a_nm, double radius_nm, double v_applied,
                               double v0_v, double cal_const_s_per_kg,
                               double casimir_gradient_n_per_m);

// Recover (V0, z0, C) from a voltage-swept shift dataset.  Each separation
// needs at least three distinct voltages; at least ten separations are
// required for the curvature fit.
CalibrationFit fit_calibration(const std::vector<ShiftRecord>& records,
                               double radius_nm, const FitOptions& opt = {});

// Subtract the electrostatic term and average repeats per separation and
// across measurement sets.  Gradients in uN/m at a = z_piezo + z0.
std::vector<GradientSample> extract_casimir(const std::vector<ShiftRecord>& records,
                                            const CalibrationFit& fit,
                                            double radius_nm,
                                            const ExtractOptions& opt = {});

} // namespace casimir::calibration
