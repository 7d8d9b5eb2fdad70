// liouvillian.hpp: superoperator form of the cascaded master equation.
//
// Vectorization is column stacking, so vec(A rho B) = (B^T kron A) vec(rho).
// Eigen's default column-major storage already lays rho out this way.

#pragma once

#include "cqed/hilbert.hpp"
#include "cqed/kernels.hpp"
#include "cqed/model.hpp"

namespace cqed {

DenseVector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const DenseVector& v, std::size_t dim);

class SuperOperator {
public:
    SuperOperator(SpaceDescriptor space, kernels::CsrMatrix matrix);

    const SpaceDescriptor& space() const noexcept { return space_; }
    const kernels::CsrMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return space_.total_dim(); }

    // L vec(rho), via the OpenMP spmv kernel.
    DenseVector apply(const DenseVector& v) const;
    void apply_into(std::span<const cplx> v, std::span<cplx> out) const;
    DenseMatrix apply(const DenseMatrix& rho) const;

private:
    SpaceDescriptor space_;
    kernels::CsrMatrix matrix_;
};

SuperOperator assemble(const LiouvillianSpec& spec);

// Term-by-term evaluation of d rho / dt without forming the superoperator.
DenseMatrix apply(const LiouvillianSpec& spec, const DenseMatrix& rho);

}  // namespace cqed
