// sweep.hpp: parameter scans over steady states, the g2 = 1 coupling
// threshold, and the master-equation vs. no-jump time-trace comparison.

#pragma once

#include "cqed/model.hpp"
#include "cqed/observables.hpp"
#include "cqed/solvers.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cqed {

enum class SweepAxis { DeltaC, G };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

enum class Observable { NA, G2, G3, PN, FK, R21 };

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view name);
const std::set<Observable>& all_observables();

struct SweepConfig {
    ModelParams base;
    DetuningOffsets offsets;  // held fixed while delta_C moves
    SweepAxis axis{SweepAxis::DeltaC};
    std::vector<double> grid;
    std::set<Observable> observables{all_observables()};
    bool check_truncation{true};  // re-solve at n_max + 2
    double residual_tolerance{1e-10};
    double truncation_tolerance{1e-6};
    SteadyStateOptions steady;
};

// Throws std::invalid_argument naming the offending setting.
void validate(const SweepConfig& config);

// Evenly spaced grid including both ends.
std::vector<double> linear_grid(double start, double stop, std::size_t points);

// Largest relative change over n_a, g2, g3, r21, P_0..P_3 and F_0..F_3.
double truncation_shift(const PhotonStatistics& coarse, const PhotonStatistics& fine);

struct RowDiagnostics {
    double residual{0.0};
    std::optional<double> truncation_shift;
    double min_eigenvalue{0.0};
    double gap_estimate{0.0};
    bool solver_failed{false};
    std::string error;

    bool residual_ok(double tol) const { return !solver_failed && residual < tol; }
};

struct SweepRow {
    double axis_value{0.0};
    ModelParams params;
    PhotonStatistics statistics;
    RowDiagnostics diagnostics;
    DenseMatrix rho;  // steady state at base.n_max (empty when the solve failed)

    // Short tokens such as "g2_undefined" or "solver_failed"; empty when clean.
    std::vector<std::string> flags(const SweepConfig& config) const;
    bool accepted(const SweepConfig& config) const;
};

ModelParams params_at(const SweepConfig& config, double axis_value);

// One grid point. Never throws for solver failures; they land in diagnostics.
SweepRow evaluate_point(const SweepConfig& config, double axis_value);

// Grid points are solved concurrently with OpenMP; rows keep grid order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);
std::vector<SweepRow> run_sweep_serial(const SweepConfig& config);

struct ThresholdResult {
    double g{0.0};
    double g2{0.0};
    int iterations{0};
};

// Bisects the coupling g at the base detunings for g2(0) = 1.
ThresholdResult find_g2_threshold(const ModelParams& base, double g_lo, double g_hi,
                                  double tolerance = 1e-6);

struct EvolutionRow {
    double t{0.0};  // units of 2*pi/gamma_s
    double n_master{0.0};
    double n_effective{0.0};
};

struct EvolutionComparison {
    std::vector<EvolutionRow> rows;
    double steady_n_a{0.0};
    double max_abs_deviation{0.0};
    double max_relative_deviation{0.0};  // max |n_master - n_effective| / steady_n_a
};

// Both evolutions start from the all-ground vacuum. t_max is in units of
// 2*pi/gamma_s; n_points >= 2 unless t_max == 0.
EvolutionComparison compare_evolutions(const ModelParams& params, double t_max,
                                       std::size_t n_points,
                                       const IntegratorOptions& options = {});

}  // namespace cqed
