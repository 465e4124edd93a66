#pragma once

#include <complex>
#include <cstddef>

namespace magbloch::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// y[i] += alpha * x[i]
using AxpyFn = void (*)(std::size_t n, cplx alpha, const cplx* x, cplx* y);

// Row-major C(m x n) += A(m x k) * B(k x n), leading dimensions in elements.
using GemmFn = void (*)(std::size_t m, std::size_t n, std::size_t k, const cplx* A, std::size_t lda,
                        const cplx* B, std::size_t ldb, cplx* C, std::size_t ldc);

// (x, y) <- (c00 x + c01 y, c10 x + c11 y) elementwise.
using RotateFn = void (*)(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x, cplx* y);

// max_i |x[i] - y[i]|
using MaxDiffFn = double (*)(std::size_t n, const cplx* x, const cplx* y);

struct KernelTable {
    AxpyFn axpy;
    GemmFn gemm;
    RotateFn rotate;
    MaxDiffFn max_abs_diff;
    Backend backend;
};

namespace scalar {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* A, std::size_t lda, const cplx* B,
          std::size_t ldb, cplx* C, std::size_t ldc);
void rotate(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x, cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
} // namespace scalar

namespace avx2 {
void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void gemm(std::size_t m, std::size_t n, std::size_t k, const cplx* A, std::size_t lda, const cplx* B,
          std::size_t ldb, cplx* C, std::size_t ldc);
void rotate(std::size_t n, cplx c00, cplx c01, cplx c10, cplx c11, cplx* x, cplx* y);
double max_abs_diff(std::size_t n, const cplx* x, const cplx* y);
} // namespace avx2

bool cpu_has_avx2();

// Active table. Picked once from CPU features; MAGBLOCH_SIMD=scalar forces the reference path.
const KernelTable& active();
const KernelTable& table_for(Backend b);
void select(Backend b);
const char* backend_name(Backend b);

} // namespace magbloch::kernels
