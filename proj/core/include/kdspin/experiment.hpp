#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kdspin {

struct OpticsElement {
  std::string name;
  double efficiency = 1.0;  // in (0, 1]
};

// SI-unit beamline and electron-bunch parameters.
struct ExperimentConfig {
  double peak_power_w = 0.0;
  double pulse_duration_s = 0.0;
  double focus_diameter_m = 0.0;
  double photon_energy_ev = 0.0;
  std::vector<OpticsElement> beam1_chain;
  std::vector<OpticsElement> beam2_chain;
  double bunch_charge_c = 0.0;
  double bunch_duration_s = 0.0;
  double repetition_rate_hz = 0.0;
  double electron_kinetic_energy_ev = 0.0;

  void validate() const;
};

// 100 GW / 20 fs / 100 nm X-ray pulses at 13 keV with a splitter-mirror
// beamline delivering ~1.2e20 W/cm^2 per beam, 10 fC / 10 ps spin-polarized
// bunches at 1 MHz.
ExperimentConfig xfel_reference_config();

// Flat-top focal spot: power / (pi (d/2)^2), W/m^2.
double focus_intensity(double power_w, double focus_diameter_m);

// Per-beam intensities at focus after the optics chains.
std::pair<double, double> beam_budget(const ExperimentConfig& cfg);

// Two-photon diffraction probability,
//   ( alpha lambda_c^2 / (8 pi sqrt2) * sqrt(I1 I2) t / (c hbar k_l) )^2,
// with lambda_c the *reduced* Compton wavelength (the non-reduced value
// overshoots the expected scale by (2 pi)^2).
double diffraction_probability_si(double i1_w_m2, double i2_w_m2, double t_s,
                                  double photon_energy_ev);

struct CountRateReport {
  double focus_intensity_w_m2 = 0.0;
  double intensity_beam1_w_m2 = 0.0;
  double intensity_beam2_w_m2 = 0.0;
  double probability = 0.0;
  double electrons_per_window = 0.0;
  double detections_per_second = 0.0;
  double diffraction_angle_deg = 0.0;
};

CountRateReport count_rate(const ExperimentConfig& cfg);

}  // namespace kdspin
