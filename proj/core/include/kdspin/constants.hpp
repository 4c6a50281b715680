#pragma once

#include <cmath>

namespace kdspin {

// Natural units: m = hbar = c = 1 throughout the core, Gaussian convention,
// so the coupling is e = sqrt(alpha). SI values are confined to the
// experiment module and the unit-conversion helpers below (CODATA 2018).

inline constexpr double fine_structure_constant = 7.2973525693e-3;

inline const double coupling_e = std::sqrt(fine_structure_constant);

namespace si {

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass_ev = 510998.95;     // eV (m_e c^2)
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

// reduced Compton wavelength hbar/(m_e c)
inline const double compton_wavelength_reduced =
    hbar / (electron_mass_kg * speed_of_light);

// one natural time unit (1/m) in seconds: hbar / (m_e c^2)
inline const double natural_time_s =
    hbar / (electron_mass_ev * elementary_charge);

}  // namespace si

inline double natural_time_from_fs(double t_fs) {
  return t_fs * 1e-15 / si::natural_time_s;
}

inline double fs_from_natural_time(double t) {
  return t * si::natural_time_s * 1e15;
}

}  // namespace kdspin
