#pragma once

#include "casimir/analysis.hpp"
#include "casimir/calibration.hpp"

#include <string>
#include <vector>

namespace casimir::io {

inline constexpr int kSchemaVersion = 1;

// Shortest stable decimal form used in every CSV cell (printf %.10g).
std::string format_number(double v);

struct GradientRow {
    double a_nm = 0.0;
    double fprime_t = 0.0; // uN/m, as are all band fields
    double fprime_0 = 0.0;
    double band_t_lo = 0.0;
    double band_t_hi = 0.0;
    double band_0_lo = 0.0;
    double band_0_hi = 0.0;
};

struct ThermalRow {
    double a_nm = 0.0;
    double fprime_t = 0.0; // uN/m
    double fprime_0 = 0.0; // uN/m
    double delta_rel = 0.0;
    double delta_rel_implicit = 0.0;
};

struct RegimeRow {
    std::string pair;
    double fraction = 0.0;
    double a_nm = 0.0;
};

void write_gradient_csv(const std::string& path, const std::vector<GradientRow>& rows);
void write_thermal_csv(const std::string& path, const std::vector<ThermalRow>& rows);
void write_regime_csv(const std::string& path, const std::vector<RegimeRow>& rows);

// shifts.csv: z_piezo_nm, voltage_v, delta_omega_rad_s, set_id, run_id
std::vector<calibration::ShiftRecord> read_shifts_csv(const std::string& path);
void write_shifts_csv(const std::string& path,
                      const std::vector<calibration::ShiftRecord>& records);

void write_calibration_json(const std::string& path, const calibration::CalibrationFit& fit);
calibration::CalibrationFit read_calibration_json(const std::string& path);

// measurements.csv: a_nm, gradient_un_per_m, err_gradient_un_per_m, err_a_nm.
// Extracted gradients use the same schema, so they feed straight back in.
analysis::MeasurementSeries read_measurements_csv(const std::string& path);
void write_measurements_csv(const std::string& path,
                            const std::vector<calibration::GradientSample>& samples);

void write_compare_csv(const std::string& path, const analysis::ComparisonReport& report);
void write_compare_json(const std::string& path, const analysis::ComparisonReport& report,
                        const std::vector<analysis::ThermalPoint>& thermal);

void ensure_directory(const std::string& dir);

} // namespace casimir::io
