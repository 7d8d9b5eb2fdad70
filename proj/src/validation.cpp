#include "cqed/validation.hpp"

#include "cqed/liouvillian.hpp"
#include "cqed/solvers.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cqed {

std::vector<BasisLabel> excitation_basis(int n) {
    std::vector<BasisLabel> basis;
    for (int e1 = 0; e1 <= 1; ++e1) {
        for (int e2 = 0; e2 <= 1; ++e2) {
            const int photons = n - e1 - e2;
            if (photons >= 0) basis.push_back({photons, e1 == 1, e2 == 1});
        }
    }
    return basis;
}

DenseMatrix tc_block(double g, double omega, double omega_c, int n) {
    ModelParams p;
    p.variant = Variant::ClassicalTC;
    p.g = g;
    p.delta_c = omega_c;
    p.delta_1 = omega;
    p.delta_2 = omega;
    p.n_max = static_cast<std::size_t>(std::max(n, 1));
    const Operator h = build_target_hamiltonian(p);
    const Layout layout = make_layout(p.variant, p.n_max);
    const std::vector<BasisLabel> basis = excitation_basis(n);

    std::vector<std::size_t> flat;
    for (const BasisLabel& b : basis) {
        std::vector<std::size_t> local(layout.space.num_sites(), 0);
        local[layout.cavity] = static_cast<std::size_t>(b.photons);
        local[layout.atoms[0]] = b.atom_1_excited ? 1 : 0;
        local[layout.atoms[1]] = b.atom_2_excited ? 1 : 0;
        flat.push_back(layout.space.index(local));
    }
    const DenseMatrix full = h.dense();
    DenseMatrix block(static_cast<Eigen::Index>(flat.size()), static_cast<Eigen::Index>(flat.size()));
    for (std::size_t i = 0; i < flat.size(); ++i) {
        for (std::size_t j = 0; j < flat.size(); ++j) {
            block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                full(static_cast<Eigen::Index>(flat[i]), static_cast<Eigen::Index>(flat[j]));
        }
    }
    return block;
}

namespace {

Eigen::VectorXd block_eigenvalues(const DenseMatrix& block) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();  // ascending
}

DenseVector amplitude_vector(const std::vector<BasisAmplitude>& amps, int n) {
    const std::vector<BasisLabel> basis = excitation_basis(n);
    DenseVector v = DenseVector::Zero(static_cast<Eigen::Index>(basis.size()));
    for (const BasisAmplitude& a : amps) {
        const auto it = std::find(basis.begin(), basis.end(), a.label);
        v(static_cast<Eigen::Index>(it - basis.begin())) += a.coefficient;
    }
    return v;
}

OracleResult finish(std::string name, double err, double tol, std::string detail = {}) {
    return {std::move(name), err, tol, err <= tol, std::move(detail)};
}

}  // namespace

double resonant_spectrum_error(double g, double omega_c, int n) {
    const DenseMatrix block = tc_block(g, omega_c, omega_c, n);
    const Eigen::VectorXd numeric = block_eigenvalues(block);
    const std::vector<DressedLevel> levels = tc_resonant_spectrum(g, omega_c, n);

    std::vector<double> closed;
    for (const DressedLevel& l : levels) closed.push_back(l.energy);
    std::sort(closed.begin(), closed.end());

    double err = closed.size() == static_cast<std::size_t>(numeric.size()) ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < closed.size() && i < static_cast<std::size_t>(numeric.size()); ++i) {
        err = std::max(err, std::abs(numeric(static_cast<Eigen::Index>(i)) - closed[i]));
    }
    for (const DressedLevel& l : levels) {
        const DenseVector v = amplitude_vector(l.amplitudes, n);
        err = std::max(err, std::abs(v.norm() - 1.0));
        err = std::max(err, (block * v - l.energy * v).norm());
    }
    return err;
}

double detuned_spectrum_error(double g, double omega, double omega_c, int n) {
    const Eigen::VectorXd numeric = block_eigenvalues(tc_block(g, omega, omega_c, n));
    double err = 0.0;
    for (const DressedLevel& l : tc_detuned_spectrum(g, omega, omega_c, n)) {
        const double reference = l.branch == Branch::Plus ? numeric.maxCoeff() : numeric.minCoeff();
        err = std::max(err, std::abs(reference - l.energy));
    }
    return err;
}

double driven_tls_error(double xi, double delta_s, double gamma_s) {
    const SpaceDescriptor space({2});
    const Operator sigma = embed(tls_lowering(), 0, space);
    const Operator h = delta_s * (sigma.adjoint() * sigma) + xi * (sigma + sigma.adjoint());
    LiouvillianSpec spec{Layout{space, 0, 0, {}}, h, {{gamma_s, sigma}}, std::nullopt};
    const DenseMatrix rho = steady_state(spec).rho;
    const TlsSteadyState closed = driven_tls_steady(xi, delta_s, gamma_s);
    const double pop_err = std::abs(rho(1, 1).real() - closed.population);
    const double coh_err = std::abs(expectation(rho, sigma) - closed.coherence);
    return std::max(pop_err, coh_err);
}

OracleResult check_resonant_spectrum() {
    double err = 0.0;
    for (double g : {0.0, 0.5, 0.9, 1.25, 2.0}) {
        for (double wc : {0.0, -1.5, 3.0}) {
            for (int n = 1; n <= 3; ++n) err = std::max(err, resonant_spectrum_error(g, wc, n));
        }
    }
    return finish("tc_resonant_spectrum", err, 1e-10, "energies and eigenvector residuals, n = 1..3");
}

OracleResult check_detuned_spectrum_single_excitation() {
    double err = 0.0;
    for (double g : {0.0, 0.5, 0.9, 1.25, 2.0}) {
        for (double d : {-2.5, -1.25, 0.0, 1.25, 2.5}) {
            err = std::max(err, detuned_spectrum_error(g, d, 0.0, 1));
            err = std::max(err, detuned_spectrum_error(g, 0.7 + d, 0.7, 1));
        }
    }
    return finish("tc_detuned_spectrum_n1", err, 1e-10, "+/- branches, one excitation");
}

OracleResult check_driven_tls() {
    double err = 0.0;
    for (double xi : {0.25, 1.0, 2.5}) {
        for (double ds : {-2.0, 0.0, 1.5}) err = std::max(err, driven_tls_error(xi, ds, 1.0));
    }
    return finish("driven_tls_steady", err, 1e-10, "3x3 (xi, delta_s) grid");
}

OracleResult check_liouvillian_paths() {
    std::mt19937_64 rng(0x11);
    std::normal_distribution<double> normal;
    double err = 0.0;
    for (Variant v : {Variant::CascadedTC, Variant::CascadedJC, Variant::CascadedEmptyCavity,
                      Variant::ClassicalTC}) {
        ModelParams p;
        p.variant = v;
        p.n_max = 4;
        p.delta_c = 0.7;
        p.delta_s = -0.4;
        p.delta_1 = 1.1;
        p.delta_2 = -0.3;
        const LiouvillianSpec spec = build_liouvillian_spec(p);
        const SuperOperator l = assemble(spec);
        const auto d = static_cast<Eigen::Index>(spec.layout.space.total_dim());
        for (int trial = 0; trial < 5; ++trial) {
            DenseMatrix x(d, d);
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cplx(normal(rng), normal(rng));
            DenseMatrix rho = x * x.adjoint();
            rho /= rho.trace();
            const DenseMatrix direct = cqed::apply(spec, rho);
            const DenseMatrix assembled = l.apply(rho);
            err = std::max(err, (direct - assembled).norm() / std::max(direct.norm(), 1e-300));
        }
    }
    return finish("liouvillian_paths", err, 1e-12, "assembled superoperator vs term-by-term, all variants");
}

OracleResult check_driven_target(const ValidationOptions& options) {
    double err = 0.0;
    for (double xi : {0.3, 1.0}) {
        for (double dc : {0.0, 2.0}) {
            ModelParams p;
            p.variant = Variant::CascadedEmptyCavity;
            p.xi = xi;
            p.delta_c = dc;
            p.delta_s = dc;
            p.mu = 0.8;
            LiouvillianSpec spec = build_liouvillian_spec(p);
            if (options.corrupt_cascade_sign) spec.cascade->coefficient = -spec.cascade->coefficient;
            const DenseMatrix rho = steady_state(spec).rho;
            const ModelOperators ops = make_operators(p.variant, p.n_max);

            // <a> = -c <sigma_s> / (i delta_c + kappa / 2), <sigma_s> from the source alone.
            const double c = std::sqrt(p.mu * p.gamma_s * p.kappa);
            const cplx sigma = driven_tls_steady(p.xi, p.delta_s, p.gamma_s).coherence;
            const cplx closed = -c * sigma / cplx(0.5 * p.kappa, p.delta_c);
            const cplx numeric = expectation(rho, ops.a);
            err = std::max(err, std::abs(numeric - closed) / std::abs(closed));
        }
    }
    return finish("driven_target_field", err, 1e-8, "cascaded empty cavity <a> vs source coherence");
}

std::vector<OracleResult> run_validation(const ValidationOptions& options) {
    return {check_resonant_spectrum(), check_detuned_spectrum_single_excitation(), check_driven_tls(),
            check_liouvillian_paths(), check_driven_target(options)};
}

}  // namespace cqed
