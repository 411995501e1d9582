#pragma once

#include <functional>
#include <vector>

namespace casimir::analysis {

struct MeasurementPoint {
    double a_nm = 0.0;
    double gradient_un_per_m = 0.0;
    double err_gradient_un_per_m = 0.0;
    double err_a_nm = 0.0;
};

// Separation-ordered measured gradients with their 67%-confidence errors.
struct MeasurementSeries {
    std::vector<MeasurementPoint> points;
};

// Theory evaluated at one separation: central value and band edges, uN/m.
struct TheoryBand {
    double center_un_per_m = 0.0;
    double lower_un_per_m = 0.0;
    double upper_un_per_m = 0.0;
};

using TheoryBandFn = std::function<TheoryBand(double a_nm)>;

struct DifferencePoint {
    double a_nm = 0.0;
    double diff_un_per_m = 0.0;      // theory - experiment
    double halfwidth_un_per_m = 0.0; // combined 67% band half-width
};

struct ExcludedInterval {
    double a_lo_nm = 0.0;
    double a_hi_nm = 0.0;
};

struct ComparisonReport {
    std::vector<DifferencePoint> differences;
    std::vector<ExcludedInterval> excluded_intervals;
};

// Difference curve theory - experiment with a combined confidence band:
// theory half-band, measurement error, and the separation error mapped
// through the local theory slope, added in quadrature.  Intervals where at
// least three consecutive points fall outside the band are flagged.
ComparisonReport compare(const MeasurementSeries& series, const TheoryBandFn& theory);

struct ThermalPoint {
    double a_nm = 0.0;
    double delta_un_per_m = 0.0;
};

// Measured thermal signal inside excluded intervals only:
// the measured gradient minus the zero-temperature theory.
std::vector<ThermalPoint> data_thermal_correction(const MeasurementSeries& series,
                                                  const TheoryBandFn& theory_zero_t,
                                                  const ComparisonReport& report);

} // namespace casimir::analysis
