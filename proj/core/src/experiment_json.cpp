#include "kdspin/experiment_json.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace kdspin {

namespace {

std::vector<OpticsElement> chain_from_json(const nlohmann::json& arr,
                                           const char* which) {
  if (!arr.is_array())
    throw std::invalid_argument(std::string(which) + " must be an array");
  std::vector<OpticsElement> chain;
  for (const auto& el : arr) {
    for (const auto& [key, value] : el.items()) {
      (void)value;
      if (key != "element" && key != "efficiency")
        throw std::invalid_argument(std::string("unknown key '") + key +
                                    "' in " + which);
    }
    chain.push_back({el.value("element", std::string("element")),
                     el.at("efficiency").get<double>()});
  }
  return chain;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> allowed{
      "peak_power_gw",    "pulse_duration_fs", "focus_diameter_nm",
      "photon_energy_kev", "beam1_chain",      "beam2_chain",
      "bunch_charge_fc",  "bunch_duration_ps", "repetition_rate_mhz",
      "electron_kinetic_energy_kev"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw std::invalid_argument("unknown experiment key '" + key + "'");
  }

  ExperimentConfig cfg = xfel_reference_config();
  if (j.contains("peak_power_gw"))
    cfg.peak_power_w = j.at("peak_power_gw").get<double>() * 1e9;
  if (j.contains("pulse_duration_fs"))
    cfg.pulse_duration_s = j.at("pulse_duration_fs").get<double>() * 1e-15;
  if (j.contains("focus_diameter_nm"))
    cfg.focus_diameter_m = j.at("focus_diameter_nm").get<double>() * 1e-9;
  if (j.contains("photon_energy_kev"))
    cfg.photon_energy_ev = j.at("photon_energy_kev").get<double>() * 1e3;
  if (j.contains("beam1_chain"))
    cfg.beam1_chain = chain_from_json(j.at("beam1_chain"), "beam1_chain");
  if (j.contains("beam2_chain"))
    cfg.beam2_chain = chain_from_json(j.at("beam2_chain"), "beam2_chain");
  if (j.contains("bunch_charge_fc"))
    cfg.bunch_charge_c = j.at("bunch_charge_fc").get<double>() * 1e-15;
  if (j.contains("bunch_duration_ps"))
    cfg.bunch_duration_s = j.at("bunch_duration_ps").get<double>() * 1e-12;
  if (j.contains("repetition_rate_mhz"))
    cfg.repetition_rate_hz = j.at("repetition_rate_mhz").get<double>() * 1e6;
  if (j.contains("electron_kinetic_energy_kev"))
    cfg.electron_kinetic_energy_ev =
        j.at("electron_kinetic_energy_kev").get<double>() * 1e3;
  cfg.validate();
  return cfg;
}

nlohmann::json experiment_report_json(const ExperimentConfig& cfg) {
  const CountRateReport r = count_rate(cfg);
  nlohmann::json j;
  j["peak_power_w"] = cfg.peak_power_w;
  j["pulse_duration_s"] = cfg.pulse_duration_s;
  j["focus_diameter_m"] = cfg.focus_diameter_m;
  j["photon_energy_ev"] = cfg.photon_energy_ev;
  j["bunch_charge_c"] = cfg.bunch_charge_c;
  j["bunch_duration_s"] = cfg.bunch_duration_s;
  j["repetition_rate_hz"] = cfg.repetition_rate_hz;
  j["electron_kinetic_energy_ev"] = cfg.electron_kinetic_energy_ev;
  j["focus_intensity_w_m2"] = r.focus_intensity_w_m2;
  j["focus_intensity_w_cm2"] = r.focus_intensity_w_m2 * 1e-4;
  j["intensity_beam1_w_m2"] = r.intensity_beam1_w_m2;
  j["intensity_beam1_w_cm2"] = r.intensity_beam1_w_m2 * 1e-4;
  j["intensity_beam2_w_m2"] = r.intensity_beam2_w_m2;
  j["intensity_beam2_w_cm2"] = r.intensity_beam2_w_m2 * 1e-4;
  j["diffraction_probability"] = r.probability;
  j["electrons_per_window"] = r.electrons_per_window;
  j["detections_per_second"] = r.detections_per_second;
  j["diffraction_angle_deg"] = r.diffraction_angle_deg;
  return j;
}

}  // namespace kdspin
