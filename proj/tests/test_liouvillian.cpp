#include "cqed/liouvillian.hpp"
#include "cqed/solvers.hpp"
#include "cqed/validation.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cqed;

namespace {

ModelParams generic(Variant v) {
    ModelParams p;
    p.variant = v;
    p.n_max = 3;
    p.delta_c = 0.4;
    p.delta_s = 1.1;
    p.delta_1 = -0.7;
    p.delta_2 = 0.25;
    p.mu = 0.7;
    return p;
}

const Variant kVariants[] = {Variant::CascadedTC, Variant::CascadedJC, Variant::CascadedEmptyCavity,
                             Variant::ClassicalTC};

}  // namespace

TEST_CASE("column-stacking identity vec(A X B) = (B^T kron A) vec(X)") {
    std::mt19937_64 rng(1);
    const DenseMatrix a = oracle::random_matrix(3, rng);
    const DenseMatrix x = oracle::random_matrix(3, rng);
    const DenseMatrix b = oracle::random_matrix(3, rng);
    const DenseVector lhs = vectorize(a * x * b);
    const DenseVector rhs = oracle::kron(b.transpose(), a) * vectorize(x);
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK((unvectorize(vectorize(x), 3) - x).norm() == 0.0);
}

TEST_CASE("assembled superoperator equals the term-by-term action") {
    std::mt19937_64 rng(2);
    for (Variant v : kVariants) {
        const LiouvillianSpec spec = build_liouvillian_spec(generic(v));
        const SuperOperator l = assemble(spec);
        const auto d = static_cast<Eigen::Index>(l.dim());
        for (int k = 0; k < 20; ++k) {
            const DenseMatrix rho = oracle::random_density(d, rng);
            const DenseMatrix x = cqed::apply(spec, rho);
            CHECK((l.apply(rho) - x).norm() <= 1e-12 * x.norm());
        }
    }
}

TEST_CASE("library master equation matches the dense reference") {
    std::mt19937_64 rng(3);
    for (Variant v : kVariants) {
        const ModelParams p = generic(v);
        const SuperOperator l = assemble(build_liouvillian_spec(p));
        const oracle::Model ref = oracle::build(p);
        for (int k = 0; k < 3; ++k) {
            const DenseMatrix rho = oracle::random_density(static_cast<Eigen::Index>(l.dim()), rng);
            const DenseMatrix expected = oracle::rhs(ref, rho);
            CHECK((l.apply(rho) - expected).norm() <= 1e-12 * expected.norm());
        }
    }
}

TEST_CASE("a flipped cascade sign is caught by the dense reference") {
    std::mt19937_64 rng(4);
    const ModelParams p = generic(Variant::CascadedTC);
    LiouvillianSpec spec = build_liouvillian_spec(p);
    spec.cascade->coefficient = -spec.cascade->coefficient;
    const DenseMatrix rho = oracle::random_density(static_cast<Eigen::Index>(spec.layout.space.total_dim()), rng);
    const DenseMatrix expected = oracle::rhs(oracle::build(p), rho);
    CHECK((cqed::apply(spec, rho) - expected).norm() > 1e-3 * expected.norm());
}

TEST_CASE("generator preserves trace and Hermiticity") {
    std::mt19937_64 rng(5);
    for (Variant v : kVariants) {
        const SuperOperator l = assemble(build_liouvillian_spec(generic(v)));
        const DenseMatrix rho = oracle::random_density(static_cast<Eigen::Index>(l.dim()), rng);
        const DenseMatrix drho = l.apply(rho);
        CHECK(std::abs(drho.trace()) < 1e-12);
        CHECK((drho - drho.adjoint()).norm() < 1e-12);
    }
}

TEST_CASE("superoperator action on vectors and spans agree") {
    std::mt19937_64 rng(6);
    const SuperOperator l = assemble(build_liouvillian_spec(generic(Variant::CascadedJC)));
    const DenseVector v = vectorize(oracle::random_density(static_cast<Eigen::Index>(l.dim()), rng));
    DenseVector out(v.size());
    l.apply_into(std::span<const cplx>(v.data(), std::size_t(v.size())),
                 std::span<cplx>(out.data(), std::size_t(out.size())));
    CHECK((out - l.apply(v)).norm() == 0.0);
}

TEST_CASE("oracle suite: driven-target field detects a corrupted cascade sign") {
    CHECK(check_driven_target().passed);
    const OracleResult broken = check_driven_target({.corrupt_cascade_sign = true});
    CHECK_FALSE(broken.passed);
    CHECK(broken.max_error > 1.0);
}

TEST_CASE("oracle suite passes on a clean build") {
    for (const OracleResult& r : run_validation()) {
        INFO(r.name << " max error " << r.max_error);
        CHECK(r.passed);
    }
}
