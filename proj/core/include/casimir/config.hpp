#pragma once

#include "casimir/corrections.hpp"
#include "casimir/graphene.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

#include <map>
#include <string>
#include <vector>

namespace casimir::config {

// Which polarization-tensor route the gradient sweeps use.
enum class Route { approx, exact, implicit_zero };

struct OscillatorSpec {
    double strength = 0.0;
    double energy_ev = 0.0;
    double damping_ev = 0.0;
};

struct MaterialConfig {
    std::string kind = "vacuum"; // vacuum | drude | plasma | oscillator | tabulated
    double wp_ev = 0.0;
    double gamma_ev = 0.0;
    std::vector<OscillatorSpec> oscillators;
    std::string table_file;
};

// Typed view of one plain-text config file plus command-line overrides.
struct RunConfig {
    // [run]
    double temperature_k = 294.0;
    int threads = 1;
    // [geometry]
    double radius_nm = 60350.0;
    double a_min_nm = 250.0;
    double a_max_nm = 700.0;
    double a_step_nm = 10.0;
    // [graphene]
    double gap_ev = 0.29;
    double mu_ev = 0.24;
    double vf_ratio = constants::default_vf_ratio;
    // [plate] / [sphere]
    std::string plate_material = "sio2";
    bool plate_graphene = true;
    std::string sphere_material = "au";
    // [material.*]
    std::map<std::string, MaterialConfig> materials;
    // [policy]
    double rel_tol = 1e-8;
    int l_max_cap = 5000;
    double quadrature_tol = 1e-9;
    Route route = Route::approx;
    reflection::TeZeroMode te_zero_mode = reflection::TeZeroMode::drude;
    // [roughness]
    double rough_sphere_nm = 0.9;
    double rough_plate_nm = 1.5;
    // [uncertainty]
    corrections::UncertaintyBudget budget;
    // [calibration]
    double pll_sigma_rad_s = 55.3e-3;
    double err_a_nm = 0.6;
    bool model_free = true;
    // [output]
    std::string output_dir = ".";
    // [regime]
    std::vector<std::string> regime_pairs = {"sio2:au", "graphene@sio2:au",
                                             "graphene:au", "pristine:au",
                                             "pristine:pristine"};
    std::vector<double> regime_fractions = {0.90, 0.95, 0.99};
    // command-line switches
    bool freestanding = false;
    bool ideal_metal = false;
    std::string base_dir = "."; // config file directory, resolves table paths

    RunConfig(); // seeds the built-in au and sio2 materials
};

// Parse a config file (empty path = defaults only), then apply
// "section.key=value" overrides in order.  Unknown sections or keys throw
// ConfigError.
RunConfig load(const std::string& path, const std::vector<std::string>& overrides = {});

// Builders from the parsed config.
materials::PermittivityModel make_material(const RunConfig& cfg, const std::string& name);
graphene::GrapheneSheet make_sheet(const RunConfig& cfg);
reflection::BoundarySpec plate_boundary(const RunConfig& cfg);
reflection::BoundarySpec sphere_boundary(const RunConfig& cfg);

// Side grammar for regime pairs: "ideal", "pristine", "graphene",
// "graphene@<mat>", "pristine@<mat>", or a bare material name.
reflection::BoundarySpec make_side(const RunConfig& cfg, const std::string& token);

lifshitz::SummationPolicy make_policy(const RunConfig& cfg);
corrections::SystemSpec make_system(const RunConfig& cfg, double a_nm);
graphene::TensorRoute tensor_route(const RunConfig& cfg);

// Separation grid [a_min, a_max] in steps of a_step (inclusive end within
// half a step).
std::vector<double> separation_grid(const RunConfig& cfg);

} // namespace casimir::config
