#pragma once

// Internal unit system: energies in eV, lengths in nm, temperatures in K.
// Angular frequencies on the imaginary axis are carried as photon energies
// (hbar*xi, in eV); wave numbers are in 1/nm.  Force gradients are eV/nm^2
// and pressures eV/nm^3 internally; conversion to uN/m and Pa happens only
// at output boundaries.

namespace casimir::constants {

inline constexpr double hbar_c_ev_nm   = 197.3269804;     // hbar*c
inline constexpr double k_b_ev_per_k   = 8.617333e-5;     // Boltzmann
inline constexpr double alpha_fs       = 7.2973525693e-3; // fine-structure constant
inline constexpr double default_vf_ratio = 1.0 / 300.0;   // Fermi velocity / c

// SI helpers for the electrostatic calibration model.
inline constexpr double eps0_f_per_m   = 8.8541878128e-12;
inline constexpr double ev_to_joule    = 1.602176634e-19;

// Output conversions.
inline constexpr double ev_nm2_to_un_per_m = 1.602176634e5; // eV/nm^2 -> uN/m
inline constexpr double ev_nm3_to_pa       = 1.602176634e8; // eV/nm^3 -> Pa

// Thermal photon energy of Matsubara order l (eV).
inline constexpr double matsubara_energy_ev(int l, double temperature_k) {
    return 2.0 * 3.14159265358979323846 * k_b_ev_per_k * temperature_k * l;
}

} // namespace casimir::constants
