#include "magbloch/kernels.hpp"

#include <algorithm>
#include <cmath>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define MAGBLOCH_X86 1
#endif

namespace magbloch::kernels::avx2 {

#ifdef MAGBLOCH_X86

namespace {

// Two packed complex numbers times a broadcast complex coefficient.
__attribute__((target("avx2,fma"))) inline __m256d cmul(__m256d re, __m256d im, __m256d x)
{
    const __m256d sw = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(re, x, _mm256_mul_pd(im, sw));
}

} // namespace

__attribute__((target("avx2,fma"))) void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y)
{
    const __m256d re = _mm256_set1_pd(alpha.real());
    const __m256d im = _mm256_set1_pd(alpha.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul(re, im, xv)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma"))) void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* A,
                                                std::size_t lda, const cplx* B, std::size_t ldb, cplx* C,
                                                std::size_t ldc)
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

__attribute__((target("avx2,fma"))) void rotate(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x,
                                                  cplx* y)
{
    const __m256d r00 = _mm256_set1_pd(c00.real()), i00 = _mm256_set1_pd(c00.imag());
    const __m256d r01 = _mm256_set1_pd(c01.real()), i01 = _mm256_set1_pd(c01.imag());
    const __m256d r10 = _mm256_set1_pd(c10.real()), i10 = _mm256_set1_pd(c10.imag());
    const __m256d r11 = _mm256_set1_pd(c11.real()), i11 = _mm256_set1_pd(c11.imag());
    double* xp = reinterpret_cast<double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d nx = _mm256_add_pd(cmul(r00, i00, xv), cmul(r01, i01, yv));
        const __m256d ny = _mm256_add_pd(cmul(r10, i10, xv), cmul(r11, i11, yv));
        _mm256_storeu_pd(xp + 2 * i, nx);
        _mm256_storeu_pd(yp + 2 * i, ny);
    }
    for (; i < n; ++i) {
        const cplx xi = x[i], yi = y[i];
        x[i] = c00 * xi + c01 * yi;
        y[i] = c10 * xi + c11 * yi;
    }
}

__attribute__((target("avx2,fma"))) double max_abs_diff(std::size_t n, const cplx* x, const cplx* y)
{
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i));
        const __m256d sq = _mm256_mul_pd(d, d);
        acc = _mm256_max_pd(acc, _mm256_hadd_pd(sq, sq));
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    double m2 = std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
    double m = std::sqrt(m2);
    for (; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

#else

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) { scalar::axpy(n, alpha, x, y); }
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* A, std::size_t lda, const cplx* B,
          std::size_t ldb, cplx* C, std::size_t ldc)
{
    scalar::gemm(m, n, k, A, lda, B, ldb, C, ldc);
}
void rotate(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x, cplx* y)
{
    scalar::rotate(n, c00, c01, c10, c11, x, y);
}
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y) { return scalar::max_abs_diff(n, x, y); }

#endif

} // namespace magbloch::kernels::avx2
