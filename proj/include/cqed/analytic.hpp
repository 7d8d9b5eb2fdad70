// analytic.hpp: closed-form reference results.
//
// Dressed-state ladder of the two-atom Tavis-Cummings Hamiltonian up to three
// excitations, and the steady state of a driven, damped two-level emitter.
// Energies are in the laboratory frame; pass detunings instead of absolute
// frequencies to compare against the rotating-frame Hamiltonian.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cqed {

enum class Branch { Minus, Zero, Plus };

std::string to_string(Branch b);

// |photons, atom 1, atom 2>, atoms as ground (false) / excited (true).
struct BasisLabel {
    int photons{0};
    bool atom_1_excited{false};
    bool atom_2_excited{false};

    bool operator==(const BasisLabel&) const = default;
};

struct BasisAmplitude {
    BasisLabel label;
    double coefficient{0.0};
};

struct DressedLevel {
    int excitation_number{0};
    Branch branch{Branch::Zero};
    double energy{0.0};
    std::vector<BasisAmplitude> amplitudes;  // empty when only the energy is known
};

// omega_1 = omega_2 = omega_c. Returns every eigenstate of the n-excitation
// block: n = 1 gives {0, +, -}; n = 2, 3 give {0, 0, +, -}.
std::vector<DressedLevel> tc_resonant_spectrum(double g, double omega_c, int n);

// omega_1 = omega_2 = omega != omega_c. Returns the {+, -} branch energies
// of the closed-form ladder; amplitudes are left empty.
std::vector<DressedLevel> tc_detuned_spectrum(double g, double omega, double omega_c, int n);

struct TlsSteadyState {
    double population{0.0};           // <e|rho|e>
    std::complex<double> coherence;   // <sigma> = <e|rho|g>
};

// H = delta_s sigma^dag sigma + xi (sigma + sigma^dag), decay gamma_s.
TlsSteadyState driven_tls_steady(double xi, double delta_s, double gamma_s);

}  // namespace cqed
