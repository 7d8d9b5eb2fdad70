// solvers.hpp: master-equation and no-jump wavefunction time evolution,
// and the steady state of the Liouvillian.
//
// Time arguments are in units of 1/gamma_s (the natural unit of the
// dimensionless rates). Callers that work on the 2*pi/gamma_s axis convert
// with kTwoPi.

#pragma once

#include "cqed/hilbert.hpp"
#include "cqed/integrator.hpp"
#include "cqed/liouvillian.hpp"
#include "cqed/model.hpp"

#include <numbers>
#include <span>
#include <vector>

namespace cqed {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct DensityTrajectory {
    std::vector<double> times;
    std::vector<DenseMatrix> states;
    IntegratorStats stats;
};

struct StateTrajectory {
    std::vector<double> times;
    std::vector<DenseVector> states;  // unnormalized
    std::vector<double> norms;
    IntegratorStats stats;
};

// Tolerances for checking a user-supplied density matrix.
struct StateChecks {
    double hermitian_tol{1e-10};
    double trace_tol{1e-10};
    double min_eigenvalue{-1e-10};
};

// Throws std::invalid_argument if rho is not a density matrix of dimension dim.
void require_density_matrix(const DenseMatrix& rho, std::size_t dim, const StateChecks& checks = {});

double min_eigenvalue(const DenseMatrix& hermitian);

// Vacuum / all-ground product state of a space.
DenseMatrix ground_density(const SpaceDescriptor& space);
DenseVector ground_vector(const SpaceDescriptor& space);

DensityTrajectory evolve_master(const LiouvillianSpec& spec, const DenseMatrix& rho0,
                                std::span<const double> t_grid,
                                const IntegratorOptions& options = {});

// d|psi>/dt = -i H_eff |psi>, no quantum jumps. Each output interval starts
// from the renormalized state; states and norms are reported unnormalized.
// Throws SolverError once the norm drops below norm_floor.
StateTrajectory evolve_effective(const Operator& h_eff, const DenseVector& psi0,
                                 std::span<const double> t_grid,
                                 const IntegratorOptions& options = {},
                                 double norm_floor = 1e-12);

cplx expectation(const DenseMatrix& rho, const Operator& op);
// <psi|O|psi> / <psi|psi>
cplx normalized_expectation(const DenseVector& psi, const Operator& op);

struct SteadyStateOptions {
    // Lower bound on the estimated inverse condition number of the bordered
    // Liouvillian; below it the null space is treated as degenerate.
    double gap_floor{1e-12};
    // Eigenvalues in [clip_floor, 0) are clipped to zero; anything lower fails.
    double clip_floor{-1e-10};
};

struct SteadyState {
    DenseMatrix rho;
    double residual{0.0};        // ||L vec(rho)||_2 / (||L||_1 ||vec(rho)||_2)
    double gap_estimate{0.0};    // estimated sigma_min / ||.||_1 of the bordered system
    double min_eigenvalue{0.0};  // before clipping
};

SteadyState steady_state(const LiouvillianSpec& spec, const SteadyStateOptions& options = {});
SteadyState steady_state(const SuperOperator& liouvillian, const SteadyStateOptions& options = {});

}  // namespace cqed
