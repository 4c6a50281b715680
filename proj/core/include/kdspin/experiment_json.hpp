#pragma once

#include "kdspin/experiment.hpp"

#include <json.hpp>

namespace kdspin {

// JSON keys carry explicit units (gw, fs, nm, kev, fc, ps, mhz); missing
// keys fall back to the reference configuration, unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

// Flat report of every intermediate quantity for auditability.
nlohmann::json experiment_report_json(const ExperimentConfig& cfg);

}  // namespace kdspin
