#include "casimir/commands.hpp"
#include "casimir/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace casimir::commands {

namespace {

using constants::ev_nm2_to_un_per_m;

std::string out_path(const config::RunConfig& cfg, const char* name) {
    io::ensure_directory(cfg.output_dir);
    return cfg.output_dir + "/" + name;
}

// Tags engine failures with the separation that produced them.
template <typename Fn>
auto at_separation(double a_nm, Fn&& fn) {
    try {
        return fn();
    } catch (const NumericsError& e) {
        throw NumericsError("a = " + io::format_number(a_nm) + " nm: " + e.what(),
                            e.achieved_error, e.requested_error);
    }
}

} // namespace

void parallel_for(int threads, std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));

    std::vector<std::exception_ptr> errors(n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

analysis::TheoryBand theory_band(const config::RunConfig& cfg, double a_nm,
                                 double temperature_k) {
    const corrections::SystemSpec spec = config::make_system(cfg, a_nm);
    const corrections::GradientBand band = corrections::build_band(
        spec, temperature_k, cfg.budget, config::make_policy(cfg));
    analysis::TheoryBand out;
    out.center_un_per_m = band.center_ev_nm2 * ev_nm2_to_un_per_m;
    out.lower_un_per_m = band.lower_ev_nm2 * ev_nm2_to_un_per_m;
    out.upper_un_per_m = band.upper_ev_nm2 * ev_nm2_to_un_per_m;
    return out;
}

std::vector<io::GradientRow> cmd_gradient(const config::RunConfig& cfg) {
    const std::vector<double> grid = config::separation_grid(cfg);
    std::vector<io::GradientRow> rows(grid.size());
    parallel_for(cfg.threads, grid.size(), [&](std::size_t i) {
        at_separation(grid[i], [&] {
            const analysis::TheoryBand warm =
                cfg.temperature_k > 0.0 ? theory_band(cfg, grid[i], cfg.temperature_k)
                                        : theory_band(cfg, grid[i], 0.0);
            const analysis::TheoryBand cold = theory_band(cfg, grid[i], 0.0);
            rows[i] = {grid[i],          warm.center_un_per_m, cold.center_un_per_m,
                       warm.lower_un_per_m, warm.upper_un_per_m, cold.lower_un_per_m,
                       cold.upper_un_per_m};
            return 0;
        });
    });
    io::write_gradient_csv(out_path(cfg, "gradient.csv"), rows);
    return rows;
}

std::vector<io::ThermalRow> cmd_thermal(const config::RunConfig& cfg) {
    if (!(cfg.temperature_k > 0.0))
        throw ConfigError("thermal: run.temperature_k must be positive");
    const std::vector<double> grid = config::separation_grid(cfg);
    std::vector<io::ThermalRow> rows(grid.size());
    const lifshitz::SummationPolicy policy = config::make_policy(cfg);
    parallel_for(cfg.threads, grid.size(), [&](std::size_t i) {
        at_separation(grid[i], [&] {
            const corrections::SystemSpec spec = config::make_system(cfg, grid[i]);
            const auto checked = [&](const lifshitz::GradientResult& r) {
                if (!r.converged)
                    throw NumericsError("thermal: Matsubara sum hit l_max_cap "
                                        "before rel_tol",
                                        std::abs(r.error_ev_nm2),
                                        policy.rel_tol * std::abs(r.value_ev_nm2));
                return r.value_ev_nm2;
            };
            const double f0 = checked(
                lifshitz::gradient_zero_T(spec.geometry, spec.plate, spec.sphere,
                                          policy, spec.te_mode));
            const double ft = checked(
                lifshitz::gradient_finite_T(spec.geometry, spec.plate, spec.sphere,
                                            cfg.temperature_k, policy,
                                            graphene::TensorRoute::thermal_approx,
                                            spec.te_mode));
            const double fi = checked(
                lifshitz::gradient_finite_T(spec.geometry, spec.plate, spec.sphere,
                                            cfg.temperature_k, policy,
                                            graphene::TensorRoute::zero_temperature,
                                            spec.te_mode));
            rows[i] = {grid[i], ft * ev_nm2_to_un_per_m, f0 * ev_nm2_to_un_per_m,
                       (ft - f0) / f0, (fi - f0) / f0};
            return 0;
        });
    });
    io::write_thermal_csv(out_path(cfg, "thermal.csv"), rows);
    return rows;
}

std::vector<io::RegimeRow> cmd_regime(const config::RunConfig& cfg) {
    if (!(cfg.temperature_k > 0.0))
        throw ConfigError("regime: run.temperature_k must be positive");
    const lifshitz::SummationPolicy policy = config::make_policy(cfg);
    std::vector<io::RegimeRow> rows;
    for (const std::string& pair : cfg.regime_pairs) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw ConfigError("regime: pair '" + pair + "' must be side:side");
        const reflection::BoundarySpec b1 =
            config::make_side(cfg, pair.substr(0, colon));
        const reflection::BoundarySpec b2 =
            config::make_side(cfg, pair.substr(colon + 1));
        for (double fraction : cfg.regime_fractions) {
            const double a = lifshitz::thermal_regime_threshold(
                b1, b2, cfg.temperature_k, fraction, policy,
                config::tensor_route(cfg), cfg.te_zero_mode);
            rows.push_back({pair, fraction, a});
        }
    }
    io::write_regime_csv(out_path(cfg, "regime.csv"), rows);
    return rows;
}

CalibrateOutput cmd_calibrate(const config::RunConfig& cfg, const std::string& shifts_csv) {
    const std::vector<calibration::ShiftRecord> records = io::read_shifts_csv(shifts_csv);
    calibration::FitOptions fopt;
    fopt.casimir_model_free = cfg.model_free;
    fopt.pll_sigma_rad_s = cfg.pll_sigma_rad_s;
    CalibrateOutput out;
    out.fit = calibration::fit_calibration(records, cfg.radius_nm, fopt);
    calibration::ExtractOptions eopt;
    eopt.pll_sigma_rad_s = cfg.pll_sigma_rad_s;
    eopt.err_a_nm = cfg.err_a_nm;
    out.samples = calibration::extract_casimir(records, out.fit, cfg.radius_nm, eopt);
    io::write_calibration_json(out_path(cfg, "calibration.json"), out.fit);
    io::write_measurements_csv(out_path(cfg, "extracted.csv"), out.samples);
    return out;
}

CompareOutput cmd_compare(const config::RunConfig& cfg, const std::string& measurements_csv) {
    const analysis::MeasurementSeries series = io::read_measurements_csv(measurements_csv);
    const analysis::TheoryBandFn theory = [&cfg](double a_nm) {
        return theory_band(cfg, a_nm, cfg.temperature_k);
    };
    CompareOutput out;
    out.report = analysis::compare(series, theory);
    const analysis::TheoryBandFn cold = [&cfg](double a_nm) {
        return theory_band(cfg, a_nm, 0.0);
    };
    out.thermal = analysis::data_thermal_correction(series, cold, out.report);
    io::write_compare_csv(out_path(cfg, "compare.csv"), out.report);
    io::write_compare_json(out_path(cfg, "compare.json"), out.report, out.thermal);
    return out;
}

} // namespace casimir::commands
