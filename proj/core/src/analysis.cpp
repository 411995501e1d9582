#include "casimir/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::analysis {

namespace {

void validate(const MeasurementSeries& s) {
    const auto& p = s.points;
    if (p.empty()) throw std::invalid_argument("analysis: empty series");
    for (size_t i = 0; i < p.size(); ++i) {
        if (!(p[i].err_gradient_un_per_m > 0.0) || !(p[i].err_a_nm >= 0.0))
            throw std::invalid_argument("analysis: non-positive measurement error");
        if (i > 0 && !(p[i].a_nm > p[i - 1].a_nm))
            throw std::invalid_argument("analysis: separations must increase");
    }
}

// Local theory slope for the separation-error term; central difference with
// a step tied to the separation error itself.
double slope(const TheoryBandFn& theory, double a_nm, double err_a_nm) {
    const double h = std::max(err_a_nm, 1e-3 * a_nm);
    const double up = theory(a_nm + h).center_un_per_m;
    const double dn = theory(a_nm - h).center_un_per_m;
    return (up - dn) / (2.0 * h);
}

} // namespace

ComparisonReport compare(const MeasurementSeries& series, const TheoryBandFn& theory) {
    validate(series);
    ComparisonReport report;
    report.differences.reserve(series.points.size());

    std::vector<bool> outside(series.points.size(), false);
    for (size_t i = 0; i < series.points.size(); ++i) {
        const auto& p = series.points[i];
        const TheoryBand band = theory(p.a_nm);
        DifferencePoint d;
        d.a_nm = p.a_nm;
        d.diff_un_per_m = band.center_un_per_m - p.gradient_un_per_m;
        const double th_half = 0.5 * (band.upper_un_per_m - band.lower_un_per_m);
        const double sep_term =
            p.err_a_nm > 0.0 ? slope(theory, p.a_nm, p.err_a_nm) * p.err_a_nm : 0.0;
        d.halfwidth_un_per_m =
            std::sqrt(th_half * th_half +
                      p.err_gradient_un_per_m * p.err_gradient_un_per_m +
                      sep_term * sep_term);
        outside[i] = std::abs(d.diff_un_per_m) > d.halfwidth_un_per_m;
        report.differences.push_back(d);
    }

    // Maximal runs of at least three consecutive outside points.
    size_t i = 0;
    while (i < outside.size()) {
        if (!outside[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < outside.size() && outside[j + 1]) ++j;
        if (j - i + 1 >= 3)
            report.excluded_intervals.push_back(
                {series.points[i].a_nm, series.points[j].a_nm});
        i = j + 1;
    }
    return report;
}

std::vector<ThermalPoint> data_thermal_correction(const MeasurementSeries& series,
                                                  const TheoryBandFn& theory_zero_t,
                                                  const ComparisonReport& report) {
    validate(series);
    std::vector<ThermalPoint> out;
    for (const auto& p : series.points) {
        bool inside = false;
        for (const auto& iv : report.excluded_intervals)
            if (p.a_nm >= iv.a_lo_nm && p.a_nm <= iv.a_hi_nm) {
                inside = true;
                break;
            }
        if (!inside) continue;
        out.push_back(
            {p.a_nm, p.gradient_un_per_m - theory_zero_t(p.a_nm).center_un_per_m});
    }
    return out;
}

} // namespace casimir::analysis
