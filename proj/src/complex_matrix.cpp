#include "magbloch/complex_matrix.hpp"

#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace magbloch {

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d)
{
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::adjoint() const
{
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const
{
    CMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("CMatrix::block out of range");
    CMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) std::copy_n(row(r0 + i) + c0, nc, b.row(i));
    return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b)
{
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw std::out_of_range("CMatrix::set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i) std::copy_n(b.row(i), b.cols(), row(r0 + i) + c0);
}

CMatrix& CMatrix::operator+=(const CMatrix& o)
{
    add_scaled(1.0, o);
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o)
{
    add_scaled(-1.0, o);
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s)
{
    for (auto& x : data_) x *= s;
    return *this;
}

void CMatrix::add_scaled(cplx s, const CMatrix& o)
{
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("CMatrix shape mismatch");
    kernels::active().axpy(data_.size(), s, o.data(), data());
}

double CMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool CMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const cplx& x) { return x == cplx(0.0, 0.0); });
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

void gemm_acc(const CMatrix& a, const CMatrix& b, CMatrix& c)
{
    if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
        throw std::invalid_argument("gemm shape mismatch");
    kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(), b.cols(), c.data(), c.cols());
}

CMatrix operator*(const CMatrix& a, const CMatrix& b)
{
    CMatrix c(a.rows(), b.cols());
    gemm_acc(a, b, c);
    return c;
}

CMatrix jordan(const CMatrix& a, const CMatrix& b)
{
    CMatrix c = a * b;
    gemm_acc(b, a, c);
    c *= 0.5;
    return c;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix power(const CMatrix& a, int k)
{
    if (!a.square()) throw std::invalid_argument("power of non-square matrix");
    if (k < 0) throw std::invalid_argument("negative matrix power");
    CMatrix r = CMatrix::identity(a.rows());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    return kernels::active().max_abs_diff(a.rows() * a.cols(), a.data(), b.data());
}

double hermiticity_residual(const CMatrix& a)
{
    if (!a.square()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

double spectral_norm(const CMatrix& a)
{
    if (a.empty()) return 0.0;
    const CMatrix g = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
    const auto w = eigvalsh(g);
    return std::sqrt(std::max(0.0, w.back()));
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix h(a.rows() * b.rows(), a.cols() * b.cols());
    kron_accumulate(1.0, a, b, h);
    return h;
}

void kron_accumulate(cplx s, const CMatrix& a, const CMatrix& b, CMatrix& h)
{
    const std::size_t br = b.rows(), bc = b.cols();
    if (h.rows() != a.rows() * br || h.cols() != a.cols() * bc) throw std::invalid_argument("kron shape mismatch");
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx c = s * a(i, j);
            if (c == cplx(0.0, 0.0)) continue;
            for (std::size_t r = 0; r < br; ++r) k.axpy(bc, c, b.row(r), h.row(i * br + r) + j * bc);
        }
}

} // namespace magbloch
