#include "kdspin/experiment.hpp"

#include "kdspin/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace kdspin {

void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("ExperimentConfig: ") + what +
                                  " must be positive");
  };
  positive(peak_power_w, "peak_power");
  positive(pulse_duration_s, "pulse_duration");
  positive(focus_diameter_m, "focus_diameter");
  positive(photon_energy_ev, "photon_energy");
  positive(bunch_charge_c, "bunch_charge");
  positive(bunch_duration_s, "bunch_duration");
  positive(repetition_rate_hz, "repetition_rate");
  positive(electron_kinetic_energy_ev, "electron_kinetic_energy");
  for (const auto* chain : {&beam1_chain, &beam2_chain})
    for (const auto& el : *chain)
      if (!(el.efficiency > 0.0) || el.efficiency > 1.0)
        throw std::invalid_argument(
            "ExperimentConfig: optics efficiency outside (0, 1]");
}

ExperimentConfig xfel_reference_config() {
  ExperimentConfig cfg;
  cfg.peak_power_w = 100e9;
  cfg.pulse_duration_s = 20e-15;
  cfg.focus_diameter_m = 100e-9;
  cfg.photon_energy_ev = 13e3;
  cfg.beam1_chain = {{"splitter transmission", 0.34}};
  for (int i = 0; i < 8; ++i) cfg.beam1_chain.push_back({"mirror", 0.85});
  cfg.beam2_chain = {{"splitter reflection", 0.56}};
  for (int i = 0; i < 8; ++i) cfg.beam2_chain.push_back({"mirror", 0.85});
  cfg.beam2_chain.push_back({"phase retarder", 0.55});
  cfg.bunch_charge_c = 10e-15;
  cfg.bunch_duration_s = 10e-12;
  cfg.repetition_rate_hz = 1e6;
  cfg.electron_kinetic_energy_ev = 212e3;
  return cfg;
}

double focus_intensity(double power_w, double focus_diameter_m) {
  if (!(power_w > 0.0) || !(focus_diameter_m > 0.0))
    throw std::invalid_argument("focus_intensity: inputs must be positive");
  const double radius = 0.5 * focus_diameter_m;
  return power_w / (std::numbers::pi * radius * radius);
}

std::pair<double, double> beam_budget(const ExperimentConfig& cfg) {
  cfg.validate();
  const double at_focus = focus_intensity(cfg.peak_power_w, cfg.focus_diameter_m);
  auto through = [at_focus](const std::vector<OpticsElement>& chain) {
    double i = at_focus;
    for (const auto& el : chain) i *= el.efficiency;
    return i;
  };
  return {through(cfg.beam1_chain), through(cfg.beam2_chain)};
}

double diffraction_probability_si(double i1_w_m2, double i2_w_m2, double t_s,
                                  double photon_energy_ev) {
  if (!(i1_w_m2 > 0.0) || !(i2_w_m2 > 0.0) || t_s < 0.0 ||
      !(photon_energy_ev > 0.0))
    throw std::invalid_argument("diffraction_probability_si: invalid inputs");
  const double lc = si::compton_wavelength_reduced;
  const double photon_energy_j = photon_energy_ev * si::elementary_charge;
  const double amp = fine_structure_constant * lc * lc /
                     (8.0 * std::numbers::pi * std::sqrt(2.0)) *
                     std::sqrt(i1_w_m2 * i2_w_m2) * t_s / photon_energy_j;
  return amp * amp;
}

CountRateReport count_rate(const ExperimentConfig& cfg) {
  cfg.validate();
  CountRateReport r;
  r.focus_intensity_w_m2 =
      focus_intensity(cfg.peak_power_w, cfg.focus_diameter_m);
  std::tie(r.intensity_beam1_w_m2, r.intensity_beam2_w_m2) = beam_budget(cfg);
  r.probability =
      diffraction_probability_si(r.intensity_beam1_w_m2, r.intensity_beam2_w_m2,
                                 cfg.pulse_duration_s, cfg.photon_energy_ev);
  r.electrons_per_window = (cfg.bunch_charge_c / si::elementary_charge) *
                           (cfg.pulse_duration_s / cfg.bunch_duration_s);
  r.detections_per_second =
      r.electrons_per_window * r.probability * cfg.repetition_rate_hz;
  // two photon momenta transverse to the nominal m_e c longitudinal momentum
  r.diffraction_angle_deg =
      std::atan2(2.0 * cfg.photon_energy_ev, si::electron_mass_ev) * 180.0 /
      std::numbers::pi;
  return r;
}

}  // namespace kdspin
