#include "cqed/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Minus: return "minus";
        case Branch::Zero: return "zero";
        case Branch::Plus: return "plus";
    }
    return "unknown";
}

namespace {

void check_manifold(int n, double g) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument("dressed spectrum is only available for 1..3 excitations");
    }
    if (!(g >= 0.0)) throw std::invalid_argument("coupling g must be >= 0");
}

constexpr bool G = false;
constexpr bool E = true;

// Coefficients of the symmetric +/- states. `sign` is +1 or -1.
std::vector<BasisAmplitude> bright_state(int n, double sign) {
    const double half = 0.5 * sign;
    switch (n) {
        case 1:
            return {{{1, G, G}, 1.0 / std::sqrt(2.0)}, {{0, E, G}, half}, {{0, G, E}, half}};
        case 2:
            return {{{0, E, E}, 1.0 / std::sqrt(6.0)},
                    {{2, G, G}, 1.0 / std::sqrt(3.0)},
                    {{1, E, G}, half},
                    {{1, G, E}, half}};
        default:
            return {{{1, E, E}, 1.0 / std::sqrt(5.0)},
                    {{3, G, G}, std::sqrt(3.0) / std::sqrt(10.0)},
                    {{2, E, G}, half},
                    {{2, G, E}, half}};
    }
}

}  // namespace

std::vector<DressedLevel> tc_resonant_spectrum(double g, double omega_c, int n) {
    check_manifold(n, g);
    const double nd = n;
    const double r2 = 1.0 / std::sqrt(2.0);
    // Splitting sqrt(2) g, sqrt(6) g, sqrt(10) g = sqrt(4n - 2) g.
    const double split = std::sqrt(4.0 * nd - 2.0) * g;
    const double centre = nd * omega_c;

    std::vector<DressedLevel> levels;
    // Antisymmetric single-atom excitation with n - 1 photons.
    levels.push_back({n, Branch::Zero, centre, {{{n - 1, G, E}, r2}, {{n - 1, E, G}, -r2}}});
    if (n == 2) {
        levels.push_back({n, Branch::Zero, centre,
                          {{{2, G, G}, 1.0 / std::sqrt(3.0)}, {{0, E, E}, -2.0 / std::sqrt(6.0)}}});
    } else if (n == 3) {
        levels.push_back({n, Branch::Zero, centre,
                          {{{3, G, G}, std::sqrt(2.0) / std::sqrt(5.0)},
                           {{1, E, E}, -std::sqrt(3.0) / std::sqrt(5.0)}}});
    }
    levels.push_back({n, Branch::Plus, centre + split, bright_state(n, +1.0)});
    levels.push_back({n, Branch::Minus, centre - split, bright_state(n, -1.0)});
    return levels;
}

std::vector<DressedLevel> tc_detuned_spectrum(double g, double omega, double omega_c, int n) {
    check_manifold(n, g);
    const double delta = omega - omega_c;
    // 8 g^2, 24 g^2, 40 g^2
    const double coupling_sq = (n == 1 ? 8.0 : n == 2 ? 24.0 : 40.0) * g * g;
    const double half_width = 0.5 * std::sqrt(coupling_sq + delta * delta);
    const double centre = 0.5 * n * (omega + omega_c);
    return {{n, Branch::Plus, centre + half_width, {}}, {n, Branch::Minus, centre - half_width, {}}};
}

TlsSteadyState driven_tls_steady(double xi, double delta_s, double gamma_s) {
    if (!(gamma_s > 0.0)) throw std::invalid_argument("driven_tls_steady: gamma_s must be > 0");
    const double pop =
        xi * xi / (delta_s * delta_s + 0.25 * gamma_s * gamma_s + 2.0 * xi * xi);
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> coherence =
        i * xi * (2.0 * pop - 1.0) / std::complex<double>(0.5 * gamma_s, delta_s);
    return {pop, coherence};
}

}  // namespace cqed
