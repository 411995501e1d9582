#pragma once

#include <cstddef>
#include <functional>

namespace casimir::num {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // accumulated local error estimates
    std::size_t evals = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_depth = 48;     // bisection depth per initial panel
    int initial_panels = 2; // forced pre-split of [a, b]
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
// Termination is on the combined criterion
//   local_error <= max(abs_tol_share, rel_tol * |panel integral|),
// with the absolute budget divided between sub-panels so the global
// absolute error stays below abs_tol (plus the relative-accepted parts).
// Throws NumericsError when the depth budget is exhausted on some panel.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           const QuadratureOptions& opt = {});

// Same, but integrates over [a, b] with interior split points given in
// `knots` (sorted, strictly inside (a, b) entries are used, others ignored).
// Useful when the integrand has known kinks, steps, or near-branch points.
QuadratureResult integrate_split(const std::function<double(double)>& f,
                                 double a, double b,
                                 const double* knots, std::size_t n_knots,
                                 const QuadratureOptions& opt = {});

} // namespace casimir::num
