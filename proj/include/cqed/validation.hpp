// validation.hpp: oracle suite run by `cqed validate` and the tests.
//
// Each oracle compares the numerical stack against an independent closed
// form or a second evaluation route and reports the largest error seen.

#pragma once

#include "cqed/analytic.hpp"
#include "cqed/model.hpp"

#include <string>
#include <vector>

namespace cqed {

struct OracleResult {
    std::string name;
    double max_error{0.0};
    double tolerance{0.0};
    bool passed{false};
    std::string detail;
};

struct ValidationOptions {
    // Test hook: flips the sign of the cascade coefficient in the
    // driven-target oracle. The oracle must then fail.
    bool corrupt_cascade_sign{false};
};

// The n-excitation block of the two-atom target Hamiltonian, basis order as
// returned by excitation_basis. Detunings play the role of frequencies.
std::vector<BasisLabel> excitation_basis(int n);
DenseMatrix tc_block(double g, double omega, double omega_c, int n);

// Largest |E_numeric - E_closed| over the block's eigenvalues, plus the
// eigenvector residual ||H v - E v|| for the resonant amplitudes.
double resonant_spectrum_error(double g, double omega_c, int n);

// Largest |E_numeric - E_closed| for the + and - branches, matched to the
// highest and lowest eigenvalue of the block.
double detuned_spectrum_error(double g, double omega, double omega_c, int n);

// Source-only steady state against the closed form, worst of population
// and coherence.
double driven_tls_error(double xi, double delta_s, double gamma_s);

OracleResult check_resonant_spectrum();
OracleResult check_detuned_spectrum_single_excitation();
OracleResult check_driven_tls();
OracleResult check_liouvillian_paths();
OracleResult check_driven_target(const ValidationOptions& options = {});

std::vector<OracleResult> run_validation(const ValidationOptions& options = {});

}  // namespace cqed
