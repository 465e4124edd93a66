#include "magbloch/eigensolver.hpp"

#include "magbloch/errors.hpp"
#include "magbloch/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>

#ifdef MAGBLOCH_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace magbloch {

namespace {

std::atomic<EigenBackend> g_backend{EigenBackend::automatic};

bool use_lapack()
{
    const auto b = g_backend.load();
    if (b == EigenBackend::jacobi) return false;
    return lapack_available();
}

#ifdef MAGBLOCH_HAVE_LAPACKE
EigenPairs lapack_eigh(const CMatrix& a, bool want_vectors)
{
    const auto n = static_cast<lapack_int>(a.rows());
    CMatrix work = a;
    std::vector<double> w(a.rows());
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, want_vectors ? 'V' : 'N', 'U', n, work.data(), n, w.data());
    if (info != 0) throw NumericError("zheevd failed with info=" + std::to_string(info));
    EigenPairs r;
    r.values = std::move(w);
    if (want_vectors) r.vectors = std::move(work);
    return r;
}
#endif

EigenPairs solve(const CMatrix& a, bool want_vectors)
{
    if (!a.square()) throw std::invalid_argument("eigensolver needs a square matrix");
    if (a.rows() == 0) return {};
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
        if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag()))
            throw NumericError("non-finite matrix entry passed to eigensolver");
#ifdef MAGBLOCH_HAVE_LAPACKE
    if (use_lapack()) return lapack_eigh(a, want_vectors);
#endif
    if (g_backend.load() == EigenBackend::lapack) throw NumericError("LAPACK backend requested but not compiled in");
    return jacobi_eigh(a, want_vectors);
}

} // namespace

bool lapack_available()
{
#ifdef MAGBLOCH_HAVE_LAPACKE
    return true;
#else
    return false;
#endif
}

void set_eigen_backend(EigenBackend b) { g_backend.store(b); }
EigenBackend eigen_backend() { return g_backend.load(); }

std::vector<double> eigvalsh(const CMatrix& a) { return solve(a, false).values; }
EigenPairs eigh(const CMatrix& a) { return solve(a, true); }

EigenPairs jacobi_eigh(const CMatrix& a_in, bool want_vectors, double tol, int max_sweeps)
{
    const std::size_t n = a_in.rows();
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a_in(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = a_in(i, j);
            a(j, i) = std::conj(a_in(i, j));
        }
    }
    CMatrix w = want_vectors ? CMatrix::identity(n) : CMatrix();
    const auto& k = kernels::active();

    double frob2 = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) frob2 += std::norm(a.data()[i]);
    const double stop = tol * tol * std::max(frob2, 1e-300);

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off <= stop) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) continue;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                if (r < 1e-300 || (sweep > 3 && r * r < 1e-36 * std::abs(app * aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const cplx ph = a(p, q) / r;
                const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                const cplx c00 = c, c01 = -s * ph, c10 = s, c11 = c * ph;
                k.rotate(n, c00, c01, c10, c11, a.row(p), a.row(q));
                for (std::size_t i : {p, q}) {
                    const cplx xp = a(i, p), xq = a(i, q);
                    a(i, p) = c * xp - s * std::conj(ph) * xq;
                    a(i, q) = s * xp + c * std::conj(ph) * xq;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    a(i, p) = std::conj(a(p, i));
                    a(i, q) = std::conj(a(q, i));
                }
                if (want_vectors) k.rotate(n, c00, c01, c10, c11, w.row(p), w.row(q));
            }
        }
    }
    if (!converged) throw NumericError("Jacobi eigensolver did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenPairs r;
    r.values.resize(n);
    for (std::size_t k2 = 0; k2 < n; ++k2) r.values[k2] = a(order[k2], order[k2]).real();
    if (want_vectors) {
        r.vectors = CMatrix(n, n);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t i = 0; i < n; ++i) r.vectors(i, col) = std::conj(w(order[col], i));
    }
    return r;
}

} // namespace magbloch
