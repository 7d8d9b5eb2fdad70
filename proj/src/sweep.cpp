#include "cqed/sweep.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::DeltaC: return "delta_c";
        case SweepAxis::G: return "g";
    }
    return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "delta_c") return SweepAxis::DeltaC;
    if (name == "g") return SweepAxis::G;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(Observable o) {
    switch (o) {
        case Observable::NA: return "n_a";
        case Observable::G2: return "g2";
        case Observable::G3: return "g3";
        case Observable::PN: return "p_n";
        case Observable::FK: return "f_k";
        case Observable::R21: return "r21";
    }
    return "unknown";
}

Observable parse_observable(std::string_view name) {
    for (Observable o : all_observables()) {
        if (name == to_string(o)) return o;
    }
    throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

const std::set<Observable>& all_observables() {
    static const std::set<Observable> all{Observable::NA, Observable::G2, Observable::G3,
                                          Observable::PN, Observable::FK, Observable::R21};
    return all;
}

void validate(const SweepConfig& config) {
    validate(config.base);
    if (config.base.n_max < 3) {
        throw std::invalid_argument("n_max must be >= 3 for sweeps");
    }
    if (config.grid.empty()) throw std::invalid_argument("sweep grid is empty");
    const bool increasing = config.grid.size() < 2 || config.grid[1] > config.grid[0];
    for (std::size_t i = 1; i < config.grid.size(); ++i) {
        const bool ok = increasing ? config.grid[i] > config.grid[i - 1]
                                   : config.grid[i] < config.grid[i - 1];
        if (!ok) throw std::invalid_argument("sweep grid must be strictly monotone");
    }
    for (double v : config.grid) {
        if (!std::isfinite(v)) throw std::invalid_argument("sweep grid contains a non-finite value");
        if (config.axis == SweepAxis::G && v < 0.0) {
            throw std::invalid_argument("g grid values must be >= 0");
        }
    }
    if (config.observables.empty()) throw std::invalid_argument("no observables selected");
}

std::vector<double> linear_grid(double start, double stop, std::size_t points) {
    if (points == 0) return {};
    if (points == 1) return {start};
    std::vector<double> grid(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);
    grid.back() = stop;
    return grid;
}

namespace {

double relative_change(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double relative_change(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return std::numeric_limits<double>::infinity();
    return a ? relative_change(*a, *b) : 0.0;
}

}  // namespace

double truncation_shift(const PhotonStatistics& coarse, const PhotonStatistics& fine) {
    double worst = relative_change(coarse.n_a, fine.n_a);
    worst = std::max(worst, relative_change(coarse.g2, fine.g2));
    worst = std::max(worst, relative_change(coarse.g3, fine.g3));
    worst = std::max(worst, relative_change(coarse.r21, fine.r21));
    const std::size_t k = std::min<std::size_t>({4, coarse.p_n.size(), fine.p_n.size()});
    for (std::size_t n = 0; n < k; ++n) {
        worst = std::max(worst, relative_change(coarse.p_n[n], fine.p_n[n]));
        worst = std::max(worst, relative_change(coarse.f_k[n], fine.f_k[n]));
    }
    return worst;
}

std::vector<std::string> SweepRow::flags(const SweepConfig& config) const {
    std::vector<std::string> out;
    if (diagnostics.solver_failed) {
        out.emplace_back("solver_failed");
        return out;
    }
    if (!(diagnostics.residual < config.residual_tolerance)) out.emplace_back("residual");
    if (diagnostics.truncation_shift && !(*diagnostics.truncation_shift < config.truncation_tolerance)) {
        out.emplace_back("truncation");
    }
    if (!statistics.g2) out.emplace_back("g2_undefined");
    if (!statistics.g3) out.emplace_back("g3_undefined");
    if (!statistics.r21) out.emplace_back("r21_undefined");
    return out;
}

bool SweepRow::accepted(const SweepConfig& config) const {
    if (!diagnostics.residual_ok(config.residual_tolerance)) return false;
    return !diagnostics.truncation_shift || *diagnostics.truncation_shift < config.truncation_tolerance;
}

ModelParams params_at(const SweepConfig& config, double axis_value) {
    switch (config.axis) {
        case SweepAxis::DeltaC: return at_cavity_detuning(config.base, config.offsets, axis_value);
        case SweepAxis::G: {
            ModelParams p = at_cavity_detuning(config.base, config.offsets, config.base.delta_c);
            p.g = axis_value;
            return p;
        }
    }
    throw std::logic_error("params_at: unhandled axis");
}

SweepRow evaluate_point(const SweepConfig& config, double axis_value) {
    SweepRow row;
    row.axis_value = axis_value;
    row.params = params_at(config, axis_value);
    try {
        const LiouvillianSpec spec = build_liouvillian_spec(row.params);
        SteadyState ss = steady_state(spec, config.steady);
        row.statistics = photon_statistics(ss.rho, spec.layout);
        row.diagnostics.residual = ss.residual;
        row.diagnostics.min_eigenvalue = ss.min_eigenvalue;
        row.diagnostics.gap_estimate = ss.gap_estimate;
        row.rho = std::move(ss.rho);

        if (config.check_truncation) {
            ModelParams finer = row.params;
            finer.n_max += 2;
            const LiouvillianSpec fine_spec = build_liouvillian_spec(finer);
            const SteadyState fine = steady_state(fine_spec, config.steady);
            row.diagnostics.truncation_shift =
                truncation_shift(row.statistics, photon_statistics(fine.rho, fine_spec.layout));
        }
    } catch (const std::exception& e) {
        row.diagnostics.solver_failed = true;
        row.diagnostics.error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    validate(config);
    std::vector<SweepRow> rows(config.grid.size());
    const auto n = static_cast<std::ptrdiff_t>(config.grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = evaluate_point(config, config.grid[static_cast<std::size_t>(i)]);
    }
    return rows;
}

std::vector<SweepRow> run_sweep_serial(const SweepConfig& config) {
    validate(config);
    std::vector<SweepRow> rows;
    rows.reserve(config.grid.size());
    for (double v : config.grid) rows.push_back(evaluate_point(config, v));
    return rows;
}

namespace {

double g2_at_coupling(ModelParams p, double g) {
    p.g = g;
    const LiouvillianSpec spec = build_liouvillian_spec(p);
    const SteadyState ss = steady_state(spec);
    const auto g2 = gn_zero(ss.rho, spec.layout, 2);
    if (!g2) throw std::runtime_error("find_g2_threshold: g2 undefined at g = " + std::to_string(g));
    return *g2;
}

}  // namespace

ThresholdResult find_g2_threshold(const ModelParams& base, double g_lo, double g_hi,
                                  double tolerance) {
    if (!(g_lo < g_hi) || g_lo < 0.0) {
        throw std::invalid_argument("find_g2_threshold: bracket must satisfy 0 <= g_lo < g_hi");
    }
    double f_lo = g2_at_coupling(base, g_lo) - 1.0;
    const double f_hi = g2_at_coupling(base, g_hi) - 1.0;
    if (f_lo * f_hi > 0.0) {
        throw std::invalid_argument("find_g2_threshold: bracket does not straddle g2 = 1");
    }
    ThresholdResult result;
    double lo = g_lo;
    double hi = g_hi;
    for (int it = 1; it <= 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = g2_at_coupling(base, mid) - 1.0;
        result = {mid, f_mid + 1.0, it};
        if (std::abs(f_mid) < tolerance || hi - lo < 1e-14) return result;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return result;
}

EvolutionComparison compare_evolutions(const ModelParams& params, double t_max,
                                       std::size_t n_points, const IntegratorOptions& options) {
    if (!is_cascaded(params.variant)) {
        throw std::invalid_argument("compare_evolutions requires a cascaded variant");
    }
    if (!(t_max >= 0.0)) throw std::invalid_argument("compare_evolutions: t_max must be >= 0");
    if (t_max > 0.0 && n_points < 2) {
        throw std::invalid_argument("compare_evolutions: need at least two time points");
    }
    const std::vector<double> axis = t_max == 0.0 ? std::vector<double>{0.0}
                                                  : linear_grid(0.0, t_max, n_points);
    const double unit = kTwoPi / params.gamma_s;
    std::vector<double> physical(axis.size());
    std::transform(axis.begin(), axis.end(), physical.begin(), [unit](double t) { return t * unit; });

    const LiouvillianSpec spec = build_liouvillian_spec(params);
    const Operator a = make_operators(params.variant, params.n_max).a;
    const Operator number = a.adjoint() * a;

    const DensityTrajectory master =
        evolve_master(spec, ground_density(spec.layout.space), physical, options);
    const StateTrajectory effective = evolve_effective(
        build_effective_hamiltonian(params), ground_vector(spec.layout.space), physical, options);

    EvolutionComparison out;
    out.steady_n_a = mean_photon(steady_state(spec).rho, spec.layout);
    for (std::size_t i = 0; i < axis.size(); ++i) {
        EvolutionRow row{axis[i], expectation(master.states[i], number).real(),
                         normalized_expectation(effective.states[i], number).real()};
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(row.n_master - row.n_effective));
        out.rows.push_back(row);
    }
    out.max_relative_deviation =
        out.steady_n_a > 0.0 ? out.max_abs_deviation / out.steady_n_a : 0.0;
    return out;
}

}  // namespace cqed
