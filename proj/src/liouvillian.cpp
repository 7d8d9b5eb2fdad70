#include "cqed/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>
#include <string>

namespace cqed {

DenseVector vectorize(const DenseMatrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("vectorize: density matrix must be square");
    }
    return Eigen::Map<const DenseVector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const DenseVector& v, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (v.size() != d * d) {
        throw std::invalid_argument("unvectorize: vector length " + std::to_string(v.size()) +
                                    " is not " + std::to_string(dim) + "^2");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), d, d);
}

SuperOperator::SuperOperator(SpaceDescriptor space, kernels::CsrMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    const auto d2 = static_cast<Eigen::Index>(space_.total_dim() * space_.total_dim());
    if (matrix_.rows() != d2 || matrix_.cols() != d2) {
        throw std::invalid_argument("SuperOperator: matrix is not D^2 x D^2");
    }
    matrix_.makeCompressed();
}

DenseVector SuperOperator::apply(const DenseVector& v) const {
    DenseVector out(matrix_.rows());
    apply_into({v.data(), static_cast<std::size_t>(v.size())},
               {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

void SuperOperator::apply_into(std::span<const cplx> v, std::span<cplx> out) const {
    kernels::spmv(matrix_, v, out);
}

DenseMatrix SuperOperator::apply(const DenseMatrix& rho) const {
    if (rho.rows() != static_cast<Eigen::Index>(dim()) || rho.cols() != rho.rows()) {
        throw std::invalid_argument("SuperOperator::apply: state shape does not match space");
    }
    return unvectorize(apply(vectorize(rho)), dim());
}

namespace {

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

void check_spec(const LiouvillianSpec& spec) {
    const SpaceDescriptor& space = spec.layout.space;
    if (!(spec.hamiltonian.space() == space)) {
        throw std::invalid_argument("LiouvillianSpec: Hamiltonian space differs from layout");
    }
    for (const CollapseTerm& c : spec.collapse_terms) {
        if (!(c.rate >= 0.0)) throw std::invalid_argument("LiouvillianSpec: negative rate");
        if (!(c.op.space() == space)) {
            throw std::invalid_argument("LiouvillianSpec: collapse operator space mismatch");
        }
    }
}

}  // namespace

SuperOperator assemble(const LiouvillianSpec& spec) {
    check_spec(spec);
    const SpaceDescriptor& space = spec.layout.space;
    const auto d = static_cast<Eigen::Index>(space.total_dim());
    SparseMatrix id(d, d);
    id.setIdentity();

    const cplx minus_i{0.0, -1.0};
    const SparseMatrix& h = spec.hamiltonian.matrix();
    SparseMatrix l = minus_i * (kron(id, h) - kron(SparseMatrix(h.transpose()), id));

    for (const CollapseTerm& c : spec.collapse_terms) {
        if (c.rate == 0.0) continue;
        const SparseMatrix& o = c.op.matrix();
        const SparseMatrix odo = o.adjoint() * o;
        l += c.rate * (kron(SparseMatrix(o.conjugate()), o) - 0.5 * kron(id, odo) -
                       0.5 * kron(SparseMatrix(odo.transpose()), id));
    }

    if (spec.cascade) {
        const CascadeTerm& k = *spec.cascade;
        const SparseMatrix& s = k.source_op.matrix();
        const SparseMatrix& a = k.target_op.matrix();
        const SparseMatrix ad = a.adjoint();
        const SparseMatrix sd = s.adjoint();
        // a^dag s rho - s rho a^dag + rho s^dag a - a rho s^dag
        const SparseMatrix term = kron(id, SparseMatrix(ad * s)) - kron(SparseMatrix(ad.transpose()), s) +
                                  kron(SparseMatrix((sd * a).transpose()), id) -
                                  kron(SparseMatrix(sd.transpose()), a);
        l -= k.coefficient * term;
    }
    l.prune(cplx{0.0});
    return {space, kernels::CsrMatrix(l)};
}

DenseMatrix apply(const LiouvillianSpec& spec, const DenseMatrix& rho) {
    check_spec(spec);
    const auto d = static_cast<Eigen::Index>(spec.layout.space.total_dim());
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("apply: state shape does not match space");
    }
    const cplx minus_i{0.0, -1.0};
    const SparseMatrix& h = spec.hamiltonian.matrix();
    DenseMatrix out = minus_i * (h * rho - rho * h);

    for (const CollapseTerm& c : spec.collapse_terms) {
        if (c.rate == 0.0) continue;
        const SparseMatrix& o = c.op.matrix();
        const SparseMatrix od = o.adjoint();
        const SparseMatrix odo = od * o;
        const DenseMatrix o_rho = o * rho;
        out += c.rate * (o_rho * od - 0.5 * (rho * odo) - 0.5 * (odo * rho));
    }

    if (spec.cascade) {
        const CascadeTerm& k = *spec.cascade;
        const SparseMatrix& s = k.source_op.matrix();
        const SparseMatrix& a = k.target_op.matrix();
        const SparseMatrix ad = a.adjoint();
        const SparseMatrix sd = s.adjoint();
        const DenseMatrix s_rho = s * rho;
        const DenseMatrix rho_sd = rho * sd;
        const DenseMatrix first = ad * s_rho - s_rho * ad;
        const DenseMatrix second = rho_sd * a - a * rho_sd;
        out -= k.coefficient * (first + second);
    }
    return out;
}

}  // namespace cqed
