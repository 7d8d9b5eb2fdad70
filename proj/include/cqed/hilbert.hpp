// hilbert.hpp: tensor-product space bookkeeping and sparse operator algebra
//
// Sites are combined with the Kronecker product in list order, so site 0 is
// the most significant index of the flattened basis.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cqed {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

class SpaceDescriptor {
public:
    SpaceDescriptor() = default;
    explicit SpaceDescriptor(std::vector<std::size_t> dims);
    SpaceDescriptor(std::initializer_list<std::size_t> dims)
        : SpaceDescriptor(std::vector<std::size_t>(dims)) {}

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t num_sites() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t site) const;
    std::size_t total_dim() const noexcept { return total_; }

    // Flattened index <-> per-site occupation.
    std::size_t index(const std::vector<std::size_t>& local) const;
    std::vector<std::size_t> local_indices(std::size_t flat) const;
    std::size_t local_index(std::size_t flat, std::size_t site) const;

    bool operator==(const SpaceDescriptor&) const = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_{0};
};

// Immutable complex operator on a SpaceDescriptor. Storage is always
// compressed sparse; dense() materializes on demand.
class Operator {
public:
    Operator() = default;
    Operator(SpaceDescriptor space, SparseMatrix matrix);
    Operator(SpaceDescriptor space, const DenseMatrix& matrix);

    static Operator identity(const SpaceDescriptor& space);
    static Operator zero(const SpaceDescriptor& space);

    const SpaceDescriptor& space() const noexcept { return space_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }
    DenseMatrix dense() const { return DenseMatrix(matrix_); }
    std::size_t dim() const noexcept { return space_.total_dim(); }

    Operator adjoint() const;
    cplx trace() const;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(cplx c, const Operator& a);
    friend Operator operator*(const Operator& a, cplx c) { return c * a; }
    Operator operator-() const { return cplx{-1.0} * *this; }

private:
    SpaceDescriptor space_;
    SparseMatrix matrix_;
};

// Free-function spellings of the algebra.
Operator add(const Operator& a, const Operator& b);
Operator mul(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);
Operator scale(cplx c, const Operator& a);

Operator commutator(const Operator& a, const Operator& b);

// Truncated bosonic lowering operator on n_max + 1 Fock levels.
Operator fock_annihilation(std::size_t n_max);

// Two-level lowering operator |g><e| with ground = 0, excited = 1.
Operator tls_lowering();

// Local operator at `site`, identity on every other site.
Operator embed(const Operator& local, std::size_t site, const SpaceDescriptor& space);

// Largest elementwise modulus of a - b (spaces must match).
double max_abs_diff(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a, double tol);

}  // namespace cqed
