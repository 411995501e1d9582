#pragma once

#include "casimir/analysis.hpp"
#include "casimir/calibration.hpp"
#include "casimir/config.hpp"
#include "casimir/io.hpp"

#include <functional>
#include <string>
#include <vector>

namespace casimir::commands {

// Index-sliced parallel loop with a deterministic failure order: whatever the
// thread count, results land in their own slots and the lowest-index
// exception wins.  threads <= 0 uses the hardware concurrency.
void parallel_for(int threads, std::size_t n, const std::function<void(std::size_t)>& fn);

// Gradient sweep with thermal and zero-point bands; writes gradient.csv.
std::vector<io::GradientRow> cmd_gradient(const config::RunConfig& cfg);

// Thermal correction (measured route and the implicit-tensor variant);
// writes thermal.csv.
std::vector<io::ThermalRow> cmd_thermal(const config::RunConfig& cfg);

// Classical-regime onset separations for the configured pairs and zero-mode
// fractions; writes regime.csv.
std::vector<io::RegimeRow> cmd_regime(const config::RunConfig& cfg);

struct CalibrateOutput {
    calibration::CalibrationFit fit;
    std::vector<calibration::GradientSample> samples;
};

// Electrostatic calibration plus Casimir-gradient extraction; writes
// calibration.json and extracted.csv.
CalibrateOutput cmd_calibrate(const config::RunConfig& cfg, const std::string& shifts_csv);

struct CompareOutput {
    analysis::ComparisonReport report;
    std::vector<analysis::ThermalPoint> thermal;
};

// Experiment-vs-theory comparison at the configured temperature; writes
// compare.csv and compare.json.
CompareOutput cmd_compare(const config::RunConfig& cfg, const std::string& measurements_csv);

// Theory band at one separation in uN/m, as used by cmd_gradient and
// cmd_compare (roughness-corrected, uncertainty-budget edges).
analysis::TheoryBand theory_band(const config::RunConfig& cfg, double a_nm,
                                 double temperature_k);

} // namespace casimir::commands
