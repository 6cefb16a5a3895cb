// experiments.hpp — named experiment runners behind the CLI.
//
// Each runner resolves a parameter set (preset + flat overrides), evaluates
// the relevant sweeps and writes CSV data files plus a JSON sidecar holding
// the fully resolved parameters (all rates in rad/s) so a run can be
// reproduced exactly.  Reruns with identical configuration are byte-identical.
//
// Override keys mirror the parameter struct field names.  Frequency-like
// keys (omega_m, gamma_m, gamma_c, g, Omega, delta) are given as ordinary
// frequencies in hertz and converted to angular units at this boundary;
// everything else (Q_m, masses in kg, dimensionless ratios, grid and
// integrator settings) passes through unchanged.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vendor_json.hpp"

namespace aptmech {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string experiment;  // fig1 | fig2 | fig3 | mass_sense | eigen | simulate
    std::string out_dir = ".";
    nlohmann::json values = nlohmann::json::object();  // flat overrides
};

// Merges a JSON config file (optional) with repeatable key=value overrides.
// Unknown or malformed input throws ConfigError.
ExperimentConfig load_config(const std::string& experiment,
                             const std::string& config_path,
                             const std::vector<std::string>& set_pairs,
                             const std::string& out_dir_flag);

struct RunResult {
    std::vector<std::string> files;     // paths written, in order
    std::vector<std::string> warnings;  // advisories for stderr
};

// Dispatches on cfg.experiment.  Throws ConfigError for bad configuration,
// NumericError if an integration degenerates, IoError on write failures.
RunResult run_experiment(const ExperimentConfig& cfg);

}  // namespace aptmech
