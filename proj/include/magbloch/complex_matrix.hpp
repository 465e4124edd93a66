#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace magbloch {

using cplx = std::complex<double>;

// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix zeros(std::size_t r, std::size_t c) { return CMatrix(r, c); }
    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(const std::vector<cplx>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    cplx* row(std::size_t i) { return data_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return data_.data() + i * cols_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    CMatrix corner(std::size_t n) const { return block(0, 0, n, n); }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);
    // this += s * o
    void add_scaled(cplx s, const CMatrix& o);
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);

    double max_abs() const;
    bool is_zero() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

// c += a * b
void gemm_acc(const CMatrix& a, const CMatrix& b, CMatrix& c);
// ½(ab + ba)
CMatrix jordan(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix power(const CMatrix& a, int k);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double hermiticity_residual(const CMatrix& a);
// ℓ2 operator norm, via Hermitian eigenvalues of a†a.
double spectral_norm(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
// h += s * kron(a, b), skipping zero entries of a.
void kron_accumulate(cplx s, const CMatrix& a, const CMatrix& b, CMatrix& h);

} // namespace magbloch
