#include "cqed/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace cqed {

double min_eigenvalue(const DenseMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue: eigen decomposition failed");
    }
    return es.eigenvalues().minCoeff();
}

void require_density_matrix(const DenseMatrix& rho, std::size_t dim, const StateChecks& checks) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("density matrix has shape " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + ", expected " +
                                    std::to_string(dim));
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > checks.hermitian_tol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - cplx{1.0}) > checks.trace_tol) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    if (min_eigenvalue(0.5 * (rho + rho.adjoint())) < checks.min_eigenvalue) {
        throw std::invalid_argument("density matrix is not positive semidefinite");
    }
}

DenseMatrix ground_density(const SpaceDescriptor& space) {
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    DenseMatrix rho = DenseMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
}

DenseVector ground_vector(const SpaceDescriptor& space) {
    DenseVector psi = DenseVector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    psi(0) = 1.0;
    return psi;
}

DensityTrajectory evolve_master(const LiouvillianSpec& spec, const DenseMatrix& rho0,
                                std::span<const double> t_grid, const IntegratorOptions& options) {
    const std::size_t dim = spec.layout.space.total_dim();
    require_density_matrix(rho0, dim);
    if (t_grid.empty() || t_grid.front() < 0.0) {
        throw std::invalid_argument("evolve_master: time grid must be nonempty and start at >= 0");
    }
    const SuperOperator l = assemble(spec);

    DensityTrajectory traj;
    traj.times.reserve(t_grid.size());
    traj.states.reserve(t_grid.size());
    traj.stats = integrate_dopri5(
        [&l](double, std::span<const cplx> y, std::span<cplx> out) { l.apply_into(y, out); }, 0.0,
        vectorize(rho0), t_grid,
        [&](double t, const DenseVector& y) {
            traj.times.push_back(t);
            traj.states.push_back(unvectorize(y, dim));
        },
        options);
    return traj;
}

namespace {

double one_norm(const kernels::CsrMatrix& m) {
    Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(m.cols());
    for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
        for (kernels::CsrMatrix::InnerIterator it(m, r); it; ++it) {
            col_sums(it.col()) += std::abs(it.value());
        }
    }
    return col_sums.maxCoeff();
}

}  // namespace

StateTrajectory evolve_effective(const Operator& h_eff, const DenseVector& psi0,
                                 std::span<const double> t_grid, const IntegratorOptions& options,
                                 double norm_floor) {
    if (psi0.size() != static_cast<Eigen::Index>(h_eff.dim())) {
        throw std::invalid_argument("evolve_effective: state length does not match Hamiltonian");
    }
    if (std::abs(psi0.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("evolve_effective: initial state must be normalized");
    }
    if (t_grid.empty() || t_grid.front() < 0.0) {
        throw std::invalid_argument("evolve_effective: time grid must be nonempty and start at >= 0");
    }
    const SparseMatrix minus_i_h = cplx{0.0, -1.0} * h_eff.matrix();
    const kernels::CsrMatrix generator(minus_i_h);
    const OdeRhs rhs = [&generator](double, std::span<const cplx> y, std::span<cplx> out) {
        kernels::spmv(generator, y, out);
    };

    // The equation is linear, so the trajectory is integrated in chunks, each
    // from the renormalized state, with the norm carried as a running product.
    // A chunk is short enough that the norm falls by at most e^-2 inside it,
    // which keeps the tolerances relative however far the norm has decayed.
    const SparseMatrix h = h_eff.matrix();
    const SparseMatrix decay = (h - SparseMatrix(h.adjoint())) * cplx{0.0, 0.5};
    const kernels::CsrMatrix decay_rows(decay);
    const double rate_bound = one_norm(decay_rows);
    const double chunk = rate_bound > 0.0 ? 2.0 / rate_bound : std::numeric_limits<double>::infinity();

    StateTrajectory traj;
    DenseVector psi = psi0;
    double norm = 1.0;
    double t_prev = 0.0;
    auto advance = [&](double t_end) {
        const double carried = norm;
        DenseVector next = psi;
        const IntegratorStats seg = integrate_dopri5(
            rhs, t_prev, psi, std::span<const double>(&t_end, 1),
            [&next](double, const DenseVector& y) { next = y; }, options,
            [carried, norm_floor](double t, const DenseVector& y) {
                if (carried * y.norm() < norm_floor) {
                    throw SolverError("evolve_effective: norm fell below floor (state fully decayed)", t);
                }
            });
        traj.stats.accepted += seg.accepted;
        traj.stats.rejected += seg.rejected;
        traj.stats.rhs_evaluations += seg.rhs_evaluations;
        const double segment_norm = next.norm();
        norm *= segment_norm;
        if (!(norm >= norm_floor)) {
            throw SolverError("evolve_effective: norm fell below floor (state fully decayed)", t_end);
        }
        psi = next / segment_norm;
        t_prev = t_end;
    };
    for (double t_out : t_grid) {
        if (t_out < t_prev) {
            throw std::invalid_argument("evolve_effective: time grid must be increasing");
        }
        const double span = t_out - t_prev;
        const auto pieces = static_cast<std::size_t>(std::ceil(span / chunk));
        const double start = t_prev;
        for (std::size_t k = 1; k < pieces; ++k) {
            advance(start + span * static_cast<double>(k) / static_cast<double>(pieces));
        }
        advance(t_out);
        traj.times.push_back(t_out);
        traj.states.push_back(norm * psi);
        traj.norms.push_back(norm);
    }
    return traj;
}

cplx expectation(const DenseMatrix& rho, const Operator& op) {
    return (op.matrix() * rho).trace();
}

cplx normalized_expectation(const DenseVector& psi, const Operator& op) {
    const double nrm2 = psi.squaredNorm();
    if (nrm2 <= 0.0) throw std::invalid_argument("normalized_expectation: zero state");
    return psi.dot(op.matrix() * psi) / nrm2;
}

SteadyState steady_state(const LiouvillianSpec& spec, const SteadyStateOptions& options) {
    return steady_state(assemble(spec), options);
}

SteadyState steady_state(const SuperOperator& liouvillian, const SteadyStateOptions& options) {
    const std::size_t dim = liouvillian.dim();
    const kernels::CsrMatrix& l = liouvillian.matrix();
    const Eigen::Index n = l.rows();

    // Replace the rho_00 equation with the trace functional. The rows of the
    // diagonal elements sum to zero (trace preservation), so one of them is
    // redundant.
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(l.nonZeros()) + dim);
    for (Eigen::Index r = 1; r < n; ++r) {
        for (kernels::CsrMatrix::InnerIterator it(l, r); it; ++it) {
            entries.emplace_back(r, it.col(), it.value());
        }
    }
    for (std::size_t k = 0; k < dim; ++k) {
        entries.emplace_back(0, static_cast<Eigen::Index>(k * (dim + 1)), 1.0);
    }
    SparseMatrix bordered(n, n);
    bordered.setFromTriplets(entries.begin(), entries.end());
    bordered.makeCompressed();

    // UMFPACK: multifrontal LU with its own fill-reducing ordering.
    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(bordered);
    if (lu.info() != Eigen::Success) {
        throw std::runtime_error("steady_state: degenerate null space (factorization failed)");
    }
    DenseVector rhs = DenseVector::Zero(n);
    rhs(0) = 1.0;
    const DenseVector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw std::runtime_error("steady_state: linear solve did not converge");
    }

    // Cheap inverse-condition estimate: one extra solve against a fixed
    // pseudo-random right-hand side.
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> normal;
    DenseVector probe(n);
    for (Eigen::Index i = 0; i < n; ++i) probe(i) = cplx{normal(rng), normal(rng)};
    const DenseVector y = lu.solve(probe);
    const kernels::CsrMatrix bordered_rows(bordered);
    const double gap = probe.norm() / (y.norm() * one_norm(bordered_rows));
    if (!(gap > options.gap_floor)) {
        throw std::runtime_error("steady_state: degenerate null space (gap estimate " +
                                 std::to_string(gap) + ")");
    }

    SteadyState out;
    out.gap_estimate = gap;
    DenseMatrix rho = unvectorize(x, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("steady_state: eigen decomposition failed");
    }
    Eigen::VectorXd evals = es.eigenvalues();
    out.min_eigenvalue = evals.minCoeff();
    if (out.min_eigenvalue < options.clip_floor) {
        throw std::runtime_error("steady_state: solution is not positive semidefinite (min eigenvalue " +
                                 std::to_string(out.min_eigenvalue) + ")");
    }
    if (out.min_eigenvalue < 0.0) {
        for (Eigen::Index i = 0; i < evals.size(); ++i) evals(i) = std::max(evals(i), 0.0);
        rho = es.eigenvectors() * evals.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        rho /= rho.trace().real();
        rho = 0.5 * (rho + rho.adjoint()).eval();
    }

    const DenseVector v = vectorize(rho);
    out.residual = liouvillian.apply(v).norm() / (one_norm(l) * v.norm());
    out.rho = std::move(rho);
    return out;
}

}  // namespace cqed
