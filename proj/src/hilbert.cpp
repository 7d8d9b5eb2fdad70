#include "cqed/hilbert.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

SpaceDescriptor::SpaceDescriptor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("SpaceDescriptor: at least one site is required");
    }
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
        if (dims_[k] < 2) {
            throw std::invalid_argument("SpaceDescriptor: site " + std::to_string(k) +
                                        " has dimension < 2");
        }
        strides_[k] = total_;
        total_ *= dims_[k];
    }
}

std::size_t SpaceDescriptor::dim(std::size_t site) const {
    if (site >= dims_.size()) {
        throw std::out_of_range("SpaceDescriptor: site " + std::to_string(site) + " out of range");
    }
    return dims_[site];
}

std::size_t SpaceDescriptor::index(const std::vector<std::size_t>& local) const {
    if (local.size() != dims_.size()) {
        throw std::invalid_argument("SpaceDescriptor::index: wrong number of sites");
    }
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (local[k] >= dims_[k]) {
            throw std::out_of_range("SpaceDescriptor::index: level out of range");
        }
        flat += local[k] * strides_[k];
    }
    return flat;
}

std::vector<std::size_t> SpaceDescriptor::local_indices(std::size_t flat) const {
    std::vector<std::size_t> out(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) out[k] = local_index(flat, k);
    return out;
}

std::size_t SpaceDescriptor::local_index(std::size_t flat, std::size_t site) const {
    return (flat / strides_[site]) % dims_[site];
}

Operator::Operator(SpaceDescriptor space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(space_.total_dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw std::invalid_argument("Operator: matrix shape does not match space");
    }
    matrix_.makeCompressed();
}

Operator::Operator(SpaceDescriptor space, const DenseMatrix& matrix)
    : Operator(std::move(space), SparseMatrix(matrix.sparseView(0.0, 0.0))) {}

Operator Operator::identity(const SpaceDescriptor& space) {
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    SparseMatrix m(d, d);
    m.setIdentity();
    return {space, std::move(m)};
}

Operator Operator::zero(const SpaceDescriptor& space) {
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    return {space, SparseMatrix(d, d)};
}

Operator Operator::adjoint() const {
    return {space_, SparseMatrix(matrix_.adjoint())};
}

cplx Operator::trace() const {
    cplx t{0.0};
    for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
            if (it.row() == it.col()) t += it.value();
        }
    }
    return t;
}

namespace {
void require_same_space(const Operator& a, const Operator& b, const char* what) {
    if (!(a.space() == b.space())) {
        throw std::invalid_argument(std::string(what) + ": operator spaces differ");
    }
}
}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
    require_same_space(a, b, "add");
    return {a.space_, SparseMatrix(a.matrix_ + b.matrix_)};
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_space(a, b, "subtract");
    return {a.space_, SparseMatrix(a.matrix_ - b.matrix_)};
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a, b, "mul");
    return {a.space_, SparseMatrix((a.matrix_ * b.matrix_).pruned())};
}

Operator operator*(cplx c, const Operator& a) {
    return {a.space_, SparseMatrix(c * a.matrix_)};
}

Operator add(const Operator& a, const Operator& b) { return a + b; }
Operator mul(const Operator& a, const Operator& b) { return a * b; }
Operator adjoint(const Operator& a) { return a.adjoint(); }
Operator scale(cplx c, const Operator& a) { return c * a; }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator fock_annihilation(std::size_t n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("fock_annihilation: n_max must be >= 1");
    }
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    std::vector<Triplet> entries;
    entries.reserve(n_max);
    for (Eigen::Index n = 1; n < d; ++n) {
        entries.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    }
    SparseMatrix m(d, d);
    m.setFromTriplets(entries.begin(), entries.end());
    return {SpaceDescriptor{n_max + 1}, std::move(m)};
}

Operator tls_lowering() {
    SparseMatrix m(2, 2);
    m.insert(0, 1) = 1.0;
    return {SpaceDescriptor{2}, std::move(m)};
}

Operator embed(const Operator& local, std::size_t site, const SpaceDescriptor& space) {
    if (site >= space.num_sites()) {
        throw std::out_of_range("embed: site " + std::to_string(site) + " out of range");
    }
    if (local.dim() != space.dims()[site]) {
        throw std::invalid_argument("embed: local dimension " + std::to_string(local.dim()) +
                                    " does not match site dimension " +
                                    std::to_string(space.dims()[site]));
    }
    std::size_t left = 1;
    std::size_t right = 1;
    for (std::size_t k = 0; k < site; ++k) left *= space.dims()[k];
    for (std::size_t k = site + 1; k < space.num_sites(); ++k) right *= space.dims()[k];

    SparseMatrix id_left(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left));
    SparseMatrix id_right(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right));
    id_left.setIdentity();
    id_right.setIdentity();
    SparseMatrix inner = Eigen::kroneckerProduct(local.matrix(), id_right);
    SparseMatrix full = Eigen::kroneckerProduct(id_left, inner);
    return {space, std::move(full)};
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_space(a, b, "max_abs_diff");
    const SparseMatrix d = a.matrix() - b.matrix();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst;
}

bool is_hermitian(const Operator& a, double tol) {
    return max_abs_diff(a, a.adjoint()) <= tol;
}

}  // namespace cqed
