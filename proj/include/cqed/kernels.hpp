// kernels.hpp: OpenMP data-parallel inner loops.
//
// Every parallel kernel has a *_serial twin. Elementwise kernels match their
// twin bit-for-bit; reductions match to rounding. The benchmark target times
// each pair against each other.

#pragma once

#include <Eigen/Sparse>

#include <complex>
#include <span>

namespace cqed::kernels {

using cplx = std::complex<double>;
using CsrMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// y = m * x
void spmv(const CsrMatrix& m, std::span<const cplx> x, std::span<cplx> y);
void spmv_serial(const CsrMatrix& m, std::span<const cplx> x, std::span<cplx> y);

// Error norm of the adaptive integrator:
//   sqrt(mean((|err_i| / (atol + rtol * max(|y0_i|, |y1_i|)))^2))
double scaled_rms(std::span<const cplx> err, std::span<const cplx> y0,
                  std::span<const cplx> y1, double rtol, double atol);
double scaled_rms_serial(std::span<const cplx> err, std::span<const cplx> y0,
                         std::span<const cplx> y1, double rtol, double atol);

int max_threads();
void set_threads(int n);

}  // namespace cqed::kernels
