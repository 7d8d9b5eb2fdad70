// model.hpp: Hamiltonians and master-equation recipes for the cascaded
// source -> Tavis-Cummings target system and its comparison variants.
//
// All rates and detunings are dimensionless, in units of the source decay
// rate gamma_s. Site order is fixed: [source TLS, cavity, atom 1, atom 2],
// with absent subsystems dropped (ClassicalTC has no source, JC has one atom,
// the empty cavity has none).

#pragma once

#include "cqed/hilbert.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cqed {

enum class Variant { CascadedTC, CascadedJC, CascadedEmptyCavity, ClassicalTC };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);
bool is_cascaded(Variant v);
std::size_t atom_count(Variant v);

struct ModelParams {
    double xi{1.0};       // source drive amplitude (real, >= 0)
    double g{1.25};       // atom-cavity coupling
    double kappa{5.0};    // cavity decay
    double gamma{0.375};  // target atom decay
    double gamma_s{1.0};  // source decay
    double mu{1.0};       // cascade efficiency in [0, 1]
    double delta_c{0.0};
    double delta_s{0.0};
    double delta_1{0.0};
    double delta_2{0.0};
    Variant variant{Variant::CascadedTC};
    std::size_t n_max{10};  // cavity Fock cutoff

    bool operator==(const ModelParams&) const = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& p);

// Detunings of the source and atoms measured from the cavity detuning. A
// delta_C sweep moves every detuning together and keeps these fixed.
struct DetuningOffsets {
    double source{0.0};
    double atom_1{0.0};
    double atom_2{0.0};

    bool operator==(const DetuningOffsets&) const = default;
};

ModelParams at_cavity_detuning(ModelParams p, const DetuningOffsets& offsets, double delta_c);
DetuningOffsets offsets_of(const ModelParams& p);

struct Layout {
    SpaceDescriptor space;
    std::optional<std::size_t> source;
    std::size_t cavity{0};
    std::vector<std::size_t> atoms;
};

Layout make_layout(Variant variant, std::size_t n_max);

// Embedded ladder operators for one layout.
struct ModelOperators {
    Layout layout;
    Operator a;
    std::optional<Operator> sigma_s;
    std::vector<Operator> sigma_atoms;
};

ModelOperators make_operators(Variant variant, std::size_t n_max);

struct CollapseTerm {
    double rate;
    Operator op;
};

// -c {[target_op^dag, source_op rho] + [rho source_op^dag, target_op]}
struct CascadeTerm {
    double coefficient;
    Operator source_op;
    Operator target_op;
};

struct LiouvillianSpec {
    Layout layout;
    Operator hamiltonian;
    std::vector<CollapseTerm> collapse_terms;
    std::optional<CascadeTerm> cascade;
};

Operator build_source_hamiltonian(const ModelParams& p);
Operator build_target_hamiltonian(const ModelParams& p);
LiouvillianSpec build_liouvillian_spec(const ModelParams& p);
Operator build_effective_hamiltonian(const ModelParams& p);

// Total excitation number a^dag a + sum_j sigma_j^dag sigma_j on the target sites.
Operator target_excitation_number(const ModelParams& p);

}  // namespace cqed
