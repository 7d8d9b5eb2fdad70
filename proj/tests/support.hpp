// Independent dense reference implementations for the tests. Nothing here
// goes through the library's operator algebra or superoperator assembly.

#pragma once

#include "cqed/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using M = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline M kron(const M& a, const M& b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline M destroy(std::size_t n_max) {
    M a = M::Zero(static_cast<Eigen::Index>(n_max + 1), static_cast<Eigen::Index>(n_max + 1));
    for (std::size_t n = 1; n <= n_max; ++n) {
        a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(double(n));
    }
    return a;
}

inline M lower() {
    M s = M::Zero(2, 2);
    s(0, 1) = 1.0;
    return s;
}

inline M on_site(const std::vector<std::size_t>& dims, std::size_t site, const M& local) {
    M out = M::Identity(1, 1);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const auto d = static_cast<Eigen::Index>(dims[k]);
        out = kron(out, k == site ? local : M::Identity(d, d));
    }
    return out;
}

struct Model {
    std::vector<std::size_t> dims;
    M h;
    std::vector<std::pair<double, M>> collapse;
    std::optional<std::pair<M, M>> cascade;  // (source lowering, cavity lowering)
    double c{0.0};
    M a;
};

// Same physics as the library model, written out from the definitions.
inline Model build(const cqed::ModelParams& p) {
    using cqed::Variant;
    const bool cascaded = p.variant != Variant::ClassicalTC;
    const std::size_t atoms = p.variant == Variant::CascadedEmptyCavity ? 0
                              : p.variant == Variant::CascadedJC        ? 1
                                                                         : 2;
    Model m;
    if (cascaded) m.dims.push_back(2);
    const std::size_t cav = m.dims.size();
    m.dims.push_back(p.n_max + 1);
    for (std::size_t j = 0; j < atoms; ++j) m.dims.push_back(2);

    m.a = on_site(m.dims, cav, destroy(p.n_max));
    const M ad = m.a.adjoint();
    m.h = p.delta_c * ad * m.a;
    const double deltas[2] = {p.delta_1, p.delta_2};
    std::vector<M> sig;
    for (std::size_t j = 0; j < atoms; ++j) {
        const M s = on_site(m.dims, cav + 1 + j, lower());
        sig.push_back(s);
        m.h += deltas[j] * s.adjoint() * s + p.g * (ad * s + s.adjoint() * m.a);
    }
    if (cascaded) {
        const M ss = on_site(m.dims, 0, lower());
        m.h += p.delta_s * ss.adjoint() * ss + p.xi * (ss + ss.adjoint());
        m.collapse.push_back({p.gamma_s, ss});
        m.cascade = std::make_pair(ss, m.a);
        m.c = std::sqrt(p.mu * p.gamma_s * p.kappa);
    } else {
        m.h += p.xi * (m.a + ad);
    }
    m.collapse.push_back({p.kappa, m.a});
    for (const M& s : sig) m.collapse.push_back({p.gamma, s});
    return m;
}

inline M rhs(const Model& m, const M& rho) {
    const cplx i{0.0, 1.0};
    M out = -i * (m.h * rho - rho * m.h);
    for (const auto& [rate, o] : m.collapse) {
        const M od = o.adjoint();
        out += rate * (o * rho * od - 0.5 * od * o * rho - 0.5 * rho * od * o);
    }
    if (m.cascade) {
        const M& s = m.cascade->first;
        const M& a = m.cascade->second;
        const M ad = a.adjoint();
        const M sd = s.adjoint();
        out -= m.c * ((ad * s * rho - s * rho * ad) + (rho * sd * a - a * rho * sd));
    }
    return out;
}

inline M random_density(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    M x(d, d);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = cplx(normal(rng), normal(rng));
    M rho = x * x.adjoint();
    return rho / rho.trace();
}

inline M random_matrix(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    M x(d, d);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = cplx(normal(rng), normal(rng));
    return x;
}

}  // namespace oracle
