#include "cqed/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

namespace {

void check_shape(const DenseMatrix& rho, const Layout& layout) {
    const auto d = static_cast<Eigen::Index>(layout.space.total_dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("state shape does not match layout");
    }
}

std::size_t cavity_cutoff(const Layout& layout) { return layout.space.dims()[layout.cavity] - 1; }

Operator cavity_lowering(const Layout& layout) {
    return embed(fock_annihilation(cavity_cutoff(layout)), layout.cavity, layout.space);
}

double falling_factorial(std::size_t n, int k) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= static_cast<double>(n) - j;
    return f;
}

}  // namespace

double mean_photon(const DenseMatrix& rho, const Layout& layout) {
    check_shape(rho, layout);
    const Operator a = cavity_lowering(layout);
    return ((a.adjoint() * a).matrix() * rho).trace().real();
}

std::optional<double> gn_zero(const DenseMatrix& rho, const Layout& layout, int order) {
    check_shape(rho, layout);
    if (order < 1) throw std::invalid_argument("gn_zero: order must be >= 1");
    const Operator a = cavity_lowering(layout);
    const Operator ad = a.adjoint();
    const double n_a = ((ad * a).matrix() * rho).trace().real();
    if (n_a < kDenominatorFloor) return std::nullopt;

    Operator lower = a;
    Operator raise = ad;
    for (int k = 1; k < order; ++k) {
        lower = lower * a;
        raise = raise * ad;
    }
    const double moment = ((raise * lower).matrix() * rho).trace().real();
    return moment / std::pow(n_a, order);
}

std::optional<double> gn_from_distribution(std::span<const double> p_n, int order) {
    if (order < 1) throw std::invalid_argument("gn_from_distribution: order must be >= 1");
    double mean = 0.0;
    double moment = 0.0;
    for (std::size_t n = 0; n < p_n.size(); ++n) {
        mean += static_cast<double>(n) * p_n[n];
        moment += falling_factorial(n, order) * p_n[n];
    }
    if (mean < kDenominatorFloor) return std::nullopt;
    return moment / std::pow(mean, order);
}

std::vector<double> photon_probabilities(const DenseMatrix& rho, const Layout& layout) {
    check_shape(rho, layout);
    std::vector<double> p(cavity_cutoff(layout) + 1, 0.0);
    for (std::size_t i = 0; i < layout.space.total_dim(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        p[layout.space.local_index(i, layout.cavity)] += rho(ii, ii).real();
    }
    return p;
}

double truncation_fidelity(const DenseMatrix& rho, const Layout& layout, std::size_t k) {
    const std::vector<double> p = photon_probabilities(rho, layout);
    if (k >= p.size()) {
        throw std::out_of_range("truncation_fidelity: k = " + std::to_string(k) +
                                " exceeds cavity cutoff " + std::to_string(p.size() - 1));
    }
    double f = 0.0;
    for (std::size_t n = 0; n <= k; ++n) f += p[n];
    return f;
}

std::optional<double> ratio_r21(const DenseMatrix& rho, const Layout& layout) {
    const std::vector<double> p = photon_probabilities(rho, layout);
    if (p.size() < 3 || p[1] < kDenominatorFloor) return std::nullopt;
    return p[2] / p[1];
}

PhotonStatistics photon_statistics(const DenseMatrix& rho, const Layout& layout) {
    PhotonStatistics s;
    s.n_a = mean_photon(rho, layout);
    s.g2 = gn_zero(rho, layout, 2);
    s.g3 = gn_zero(rho, layout, 3);
    s.p_n = photon_probabilities(rho, layout);
    s.f_k.resize(s.p_n.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < s.p_n.size(); ++n) {
        acc += s.p_n[n];
        s.f_k[n] = acc;
    }
    if (s.p_n.size() >= 3 && s.p_n[1] >= kDenominatorFloor) s.r21 = s.p_n[2] / s.p_n[1];
    return s;
}

}  // namespace cqed
