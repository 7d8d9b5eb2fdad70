#include "cqed/kernels.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqed::kernels {

namespace {

void check_spmv_shapes(const CsrMatrix& m, std::span<const cplx> x, std::span<cplx> y) {
    if (static_cast<Eigen::Index>(x.size()) != m.cols() ||
        static_cast<Eigen::Index>(y.size()) != m.rows()) {
        throw std::invalid_argument("spmv: vector length does not match matrix shape");
    }
    if (!m.isCompressed()) {
        throw std::invalid_argument("spmv: matrix must be compressed");
    }
}

inline cplx row_dot(const cplx* values, const CsrMatrix::StorageIndex* cols,
                    CsrMatrix::StorageIndex begin, CsrMatrix::StorageIndex end,
                    const cplx* x) {
    cplx acc{0.0};
    for (auto k = begin; k < end; ++k) acc += values[k] * x[cols[k]];
    return acc;
}

inline double scaled_sq(cplx e, cplx a, cplx b, double rtol, double atol) {
    const double sc = atol + rtol * std::max(std::abs(a), std::abs(b));
    const double r = std::abs(e) / sc;
    return r * r;
}

void check_same_length(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) throw std::invalid_argument("scaled_rms: length mismatch");
}

}  // namespace

void spmv(const CsrMatrix& m, std::span<const cplx> x, std::span<cplx> y) {
    check_spmv_shapes(m, x, y);
    const auto* outer = m.outerIndexPtr();
    const auto* inner = m.innerIndexPtr();
    const cplx* values = m.valuePtr();
    const cplx* xp = x.data();
    cplx* yp = y.data();
    const Eigen::Index rows = m.rows();

#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
        yp[i] = row_dot(values, inner, outer[i], outer[i + 1], xp);
    }
}

void spmv_serial(const CsrMatrix& m, std::span<const cplx> x, std::span<cplx> y) {
    check_spmv_shapes(m, x, y);
    const auto* outer = m.outerIndexPtr();
    const auto* inner = m.innerIndexPtr();
    const cplx* values = m.valuePtr();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        y[i] = row_dot(values, inner, outer[i], outer[i + 1], x.data());
    }
}

double scaled_rms(std::span<const cplx> err, std::span<const cplx> y0,
                  std::span<const cplx> y1, double rtol, double atol) {
    check_same_length(err.size(), y0.size(), y1.size());
    if (err.empty()) return 0.0;
    const auto n = static_cast<std::ptrdiff_t>(err.size());
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        sum += scaled_sq(err[i], y0[i], y1[i], rtol, atol);
    }
    return std::sqrt(sum / static_cast<double>(n));
}

double scaled_rms_serial(std::span<const cplx> err, std::span<const cplx> y0,
                         std::span<const cplx> y1, double rtol, double atol) {
    check_same_length(err.size(), y0.size(), y1.size());
    if (err.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        sum += scaled_sq(err[i], y0[i], y1[i], rtol, atol);
    }
    return std::sqrt(sum / static_cast<double>(err.size()));
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
    if (n < 1) throw std::invalid_argument("thread count must be >= 1");
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

}  // namespace cqed::kernels
