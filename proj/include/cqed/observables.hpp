// observables.hpp: photon statistics of the cavity mode.

#pragma once

#include "cqed/hilbert.hpp"
#include "cqed/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cqed {

// Ratios whose denominator falls below this are reported as undefined.
inline constexpr double kDenominatorFloor = 1e-8;

struct PhotonStatistics {
    double n_a{0.0};
    std::optional<double> g2;
    std::optional<double> g3;
    std::vector<double> p_n;  // reduced cavity number distribution, n = 0..n_max
    std::vector<double> f_k;  // cumulative sums of p_n
    std::optional<double> r21;
};

double mean_photon(const DenseMatrix& rho, const Layout& layout);

// tr(a^dag^n a^n rho) / tr(a^dag a rho)^n, from the operator moments.
std::optional<double> gn_zero(const DenseMatrix& rho, const Layout& layout, int order);

// Same quantity from a number distribution: sum n!/(n-k)! P_n / (sum n P_n)^k.
std::optional<double> gn_from_distribution(std::span<const double> p_n, int order);

// P_n = tr[(|n><n| on the cavity, identity elsewhere) rho].
std::vector<double> photon_probabilities(const DenseMatrix& rho, const Layout& layout);

double truncation_fidelity(const DenseMatrix& rho, const Layout& layout, std::size_t k);

std::optional<double> ratio_r21(const DenseMatrix& rho, const Layout& layout);

PhotonStatistics photon_statistics(const DenseMatrix& rho, const Layout& layout);

}  // namespace cqed
