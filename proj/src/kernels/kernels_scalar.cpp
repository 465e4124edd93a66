#include "magbloch/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace magbloch::kernels::scalar {

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y)
{
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* A, std::size_t lda, const cplx* B,
          std::size_t ldb, cplx* C, std::size_t ldc)
{
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = C + i * ldc;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx a = A[i * lda + l];
            if (a == cplx(0.0, 0.0)) continue;
            axpy(n, a, B + l * ldb, crow);
        }
    }
}

void rotate(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x, cplx* y)
{
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[i], yi = y[i];
        x[i] = c00 * xi + c01 * yi;
        y[i] = c10 * xi + c11 * yi;
    }
}

double max_abs_diff(std::size_t n, const cplx* x, const cplx* y)
{
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

} // namespace magbloch::kernels::scalar
