#pragma once

#include <string>
#include <utility>
#include <vector>

namespace casimir::materials {

// Dielectric permittivity evaluated along the imaginary frequency axis,
// eps(i*xi).  Frequencies are photon energies hbar*xi in eV; eps is real
// and >= 1 for every supported model.
//
// Supported kinds:
//   vacuum       eps = 1
//   drude_metal  eps = 1 + wp^2 / (xi * (xi + gamma))
//   plasma_metal eps = 1 + wp^2 / xi^2
//   oscillator   eps = 1 + sum_i s_i / (1 + (xi/w_i)^2 + g_i*xi/w_i^2)
//   tabulated    linear interpolation of (log xi, eps) sample pairs
//
// Metallic kinds diverge at xi = 0; the evaluation caps eps(i*0) at
// kZeroFrequencyCap so downstream zero-mode reflection coefficients reach
// their metallic limits within 1e-6 without special-casing infinities.

enum class Kind { vacuum, drude_metal, plasma_metal, oscillator, tabulated };

struct Oscillator {
    double strength;    // dimensionless
    double energy_ev;   // resonance energy
    double damping_ev;  // damping energy (0 allowed)
};

inline constexpr double kZeroFrequencyCap = 1e12;

class PermittivityModel {
public:
    static PermittivityModel vacuum();
    static PermittivityModel drude(double plasma_energy_ev,
                                   double relaxation_energy_ev);
    static PermittivityModel plasma(double plasma_energy_ev);
    static PermittivityModel oscillators(std::vector<Oscillator> modes);
    // Samples are (hbar*xi in eV, eps) pairs; must be sorted by energy,
    // strictly increasing, with eps >= 1.  Queries outside the sampled
    // range clamp to the nearest endpoint.
    static PermittivityModel tabulated(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }
    double plasma_energy_ev() const { return plasma_energy_ev_; }
    double relaxation_energy_ev() const { return relaxation_energy_ev_; }
    const std::vector<Oscillator>& modes() const { return modes_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    // eps(i*xi) for xi >= 0 (xi as photon energy in eV).
    double eps(double xi_ev) const;

    // lim_{xi->0} xi^2 * (eps(i*xi) - 1), in eV^2.  Nonzero only for
    // plasma_metal (= wp^2), where it feeds the metallic TE zero mode.
    double zero_mode_eps_xi2() const;

    bool is_metal() const {
        return kind_ == Kind::drude_metal || kind_ == Kind::plasma_metal;
    }

private:
    PermittivityModel() = default;
    Kind kind_ = Kind::vacuum;
    double plasma_energy_ev_ = 0.0;
    double relaxation_energy_ev_ = 0.0;
    std::vector<Oscillator> modes_;
    std::vector<std::pair<double, double>> samples_;
};

} // namespace casimir::materials
