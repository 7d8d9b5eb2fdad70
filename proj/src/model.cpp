#include "cqed/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::CascadedTC: return "cascaded_tc";
        case Variant::CascadedJC: return "cascaded_jc";
        case Variant::CascadedEmptyCavity: return "cascaded_empty";
        case Variant::ClassicalTC: return "classical_tc";
    }
    return "unknown";
}

Variant parse_variant(std::string_view name) {
    for (Variant v : {Variant::CascadedTC, Variant::CascadedJC, Variant::CascadedEmptyCavity,
                      Variant::ClassicalTC}) {
        if (name == to_string(v)) return v;
    }
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

bool is_cascaded(Variant v) { return v != Variant::ClassicalTC; }

std::size_t atom_count(Variant v) {
    switch (v) {
        case Variant::CascadedTC:
        case Variant::ClassicalTC: return 2;
        case Variant::CascadedJC: return 1;
        case Variant::CascadedEmptyCavity: return 0;
    }
    return 0;
}

void validate(const ModelParams& p) {
    auto nonneg = [](double v, const char* key) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(key) + " must be a finite value >= 0");
        }
    };
    nonneg(p.xi, "xi");
    nonneg(p.g, "g");
    nonneg(p.kappa, "kappa");
    nonneg(p.gamma, "gamma");
    nonneg(p.gamma_s, "gamma_s");
    if (!(p.mu >= 0.0 && p.mu <= 1.0)) {
        throw std::invalid_argument("mu must lie in [0, 1]");
    }
    for (auto [v, key] : {std::pair{p.delta_c, "delta_c"}, std::pair{p.delta_s, "delta_s"},
                          std::pair{p.delta_1, "delta_1"}, std::pair{p.delta_2, "delta_2"}}) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(key) + " must be finite");
    }
    if (p.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
}

ModelParams at_cavity_detuning(ModelParams p, const DetuningOffsets& offsets, double delta_c) {
    p.delta_c = delta_c;
    p.delta_s = delta_c + offsets.source;
    p.delta_1 = delta_c + offsets.atom_1;
    p.delta_2 = delta_c + offsets.atom_2;
    return p;
}

DetuningOffsets offsets_of(const ModelParams& p) {
    return {p.delta_s - p.delta_c, p.delta_1 - p.delta_c, p.delta_2 - p.delta_c};
}

Layout make_layout(Variant variant, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    Layout layout;
    std::vector<std::size_t> dims;
    if (is_cascaded(variant)) {
        layout.source = dims.size();
        dims.push_back(2);
    }
    layout.cavity = dims.size();
    dims.push_back(n_max + 1);
    for (std::size_t j = 0; j < atom_count(variant); ++j) {
        layout.atoms.push_back(dims.size());
        dims.push_back(2);
    }
    layout.space = SpaceDescriptor(std::move(dims));
    return layout;
}

ModelOperators make_operators(Variant variant, std::size_t n_max) {
    Layout layout = make_layout(variant, n_max);
    const Operator sigma = tls_lowering();
    ModelOperators ops{layout, embed(fock_annihilation(n_max), layout.cavity, layout.space),
                       std::nullopt, {}};
    if (layout.source) ops.sigma_s = embed(sigma, *layout.source, layout.space);
    for (std::size_t site : layout.atoms) {
        ops.sigma_atoms.push_back(embed(sigma, site, layout.space));
    }
    return ops;
}

namespace {

Operator number(const Operator& lowering) { return lowering.adjoint() * lowering; }

Operator target_hamiltonian(const ModelParams& p, const ModelOperators& ops) {
    Operator h = p.delta_c * number(ops.a);
    const double detunings[2] = {p.delta_1, p.delta_2};
    for (std::size_t j = 0; j < ops.sigma_atoms.size(); ++j) {
        const Operator& s = ops.sigma_atoms[j];
        h = h + detunings[j] * number(s);
        h = h + p.g * (s.adjoint() * ops.a + s * ops.a.adjoint());
    }
    return h;
}

Operator source_hamiltonian(const ModelParams& p, const ModelOperators& ops) {
    if (!ops.sigma_s) {
        throw std::invalid_argument("variant " + std::string(to_string(p.variant)) +
                                    " has no source subsystem");
    }
    const Operator& s = *ops.sigma_s;
    return p.delta_s * number(s) + p.xi * (s + s.adjoint());
}

}  // namespace

Operator build_source_hamiltonian(const ModelParams& p) {
    validate(p);
    return source_hamiltonian(p, make_operators(p.variant, p.n_max));
}

Operator build_target_hamiltonian(const ModelParams& p) {
    validate(p);
    return target_hamiltonian(p, make_operators(p.variant, p.n_max));
}

LiouvillianSpec build_liouvillian_spec(const ModelParams& p) {
    validate(p);
    const ModelOperators ops = make_operators(p.variant, p.n_max);
    LiouvillianSpec spec{ops.layout, target_hamiltonian(p, ops), {}, std::nullopt};

    if (is_cascaded(p.variant)) {
        spec.hamiltonian = spec.hamiltonian + source_hamiltonian(p, ops);
        spec.collapse_terms.push_back({p.gamma_s, *ops.sigma_s});
    } else {
        spec.hamiltonian = spec.hamiltonian + p.xi * (ops.a + ops.a.adjoint());
    }
    spec.collapse_terms.push_back({p.kappa, ops.a});
    for (const Operator& s : ops.sigma_atoms) spec.collapse_terms.push_back({p.gamma, s});

    if (is_cascaded(p.variant)) {
        spec.cascade = CascadeTerm{std::sqrt(p.mu * p.gamma_s * p.kappa), *ops.sigma_s, ops.a};
    }
    return spec;
}

Operator build_effective_hamiltonian(const ModelParams& p) {
    if (!is_cascaded(p.variant)) {
        throw std::invalid_argument("effective Hamiltonian requires a cascaded variant");
    }
    const LiouvillianSpec spec = build_liouvillian_spec(p);
    const cplx half_i{0.0, 0.5};
    Operator h = spec.hamiltonian;
    for (const CollapseTerm& c : spec.collapse_terms) {
        h = h - half_i * c.rate * number(c.op);
    }
    const CascadeTerm& k = *spec.cascade;
    h = h - cplx{0.0, k.coefficient} * (k.target_op.adjoint() * k.source_op);
    return h;
}

Operator target_excitation_number(const ModelParams& p) {
    const ModelOperators ops = make_operators(p.variant, p.n_max);
    Operator n = number(ops.a);
    for (const Operator& s : ops.sigma_atoms) n = n + number(s);
    return n;
}

}  // namespace cqed
