// config.hpp: run configuration files.
//
// A config is a YAML mapping with up to five sections; every key is optional
// and unknown keys are rejected. Grammar (defaults shown):
//
//   model:
//     variant: cascaded_tc     # cascaded_tc | cascaded_jc | cascaded_empty | classical_tc
//     xi: 1.0                  # all rates and detunings in units of gamma_s
//     g: 1.25
//     kappa: 5.0
//     gamma: 0.375
//     gamma_s: 1.0
//     mu: 1.0                  # in [0, 1]
//     delta_c: 0.0             # fixed cavity detuning (steady / evolve / threshold / g sweeps)
//     source_offset: 0.0       # delta_s - delta_c
//     atom_offset_1: 0.0       # delta_1 - delta_c
//     atom_offset_2: 0.0       # delta_2 - delta_c
//   numerics:
//     n_max: 10
//     check_truncation: true   # re-solve sweep points at n_max + 2
//     rtol: 1.0e-8
//     atol: 1.0e-10
//     failure_budget: 0        # flagged sweep rows tolerated before a nonzero exit
//   sweep:
//     axis: delta_c            # delta_c | g
//     start: -20.0
//     stop: 20.0
//     points: 161
//     values: [...]            # explicit grid; excludes start/stop/points
//     observables: [n_a, g2, g3, p_n, f_k, r21]
//   threshold:
//     g_lo: 0.5
//     g_hi: 1.5
//     tolerance: 1.0e-6
//   evolve:
//     t_max: 20.0              # units of 2*pi/gamma_s
//     points: 201

#pragma once

#include "cqed/integrator.hpp"
#include "cqed/sweep.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cqed {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line, int column, std::string key);

    int line() const noexcept { return line_; }      // 1-based, 0 if unknown
    int column() const noexcept { return column_; }  // 1-based, 0 if unknown
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    int column_;
    std::string key_;
};

struct ThresholdSettings {
    double g_lo{0.5};
    double g_hi{1.5};
    double tolerance{1e-6};
};

struct EvolveSettings {
    double t_max{20.0};
    std::size_t points{201};
};

struct RunConfig {
    SweepConfig sweep;  // sweep.base holds the resolved model parameters
    ThresholdSettings threshold;
    EvolveSettings evolve;
    IntegratorOptions integrator;
    std::size_t failure_budget{0};

    const ModelParams& model() const noexcept { return sweep.base; }
};

RunConfig default_run_config();

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Applies a cavity cutoff override and re-validates.
void override_n_max(RunConfig& config, std::size_t n_max);

nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const RunConfig& config);

}  // namespace cqed
