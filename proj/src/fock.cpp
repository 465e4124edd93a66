#include "magbloch/fock.hpp"

#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"

#include <cmath>
#include <sstream>

namespace magbloch {

FockTruncation make_truncation(int n_max, int guard)
{
    if (n_max < 1) throw ConfigError("Fock truncation needs n_max >= 1");
    if (guard < 0 || guard >= n_max) throw ConfigError("Fock guard must satisfy 0 <= guard < n_max");
    return FockTruncation{n_max, guard};
}

void require_truncation_budget(const FockTruncation& T, int order, int max_band)
{
    if (T.n_max < 2 * order + max_band + T.guard) {
        std::ostringstream os;
        os << "truncation budget: n_max=" << T.n_max << " < 2*order + max_band + guard = "
           << 2 * order + max_band + T.guard;
        throw ResourceError(os.str());
    }
}

std::pair<FockMatrix, FockMatrix> ladder(const FockTruncation& T)
{
    if (T.n_max < 1) throw ConfigError("ladder needs n_max >= 1");
    const std::size_t d = T.dim();
    FockMatrix a(d, d);
    for (std::size_t n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {a, a.adjoint()};
}

FockMatrix xi_matrix(const FockTruncation& T)
{
    const std::size_t d = T.dim();
    FockMatrix x(d, d);
    for (std::size_t n = 0; n < d; ++n) x(n, n) = double(n) + 0.5;
    return x;
}

cplx generator_coefficient(int n, int m, const Lattice2D& L)
{
    return (double(n) * L.z_b - double(m) * L.z_a) / std::sqrt(2.0);
}

FockMatrix linear_ladder(cplx g, cplx g_bar, const FockTruncation& T)
{
    const std::size_t d = T.dim();
    FockMatrix x(d, d);
    for (std::size_t n = 1; n < d; ++n) {
        const double s = std::sqrt(double(n));
        x(n - 1, n) = g * s;
        x(n, n - 1) = g_bar * s;
    }
    return x;
}

FockMatrix I_generator(int n, int m, const Lattice2D& L, const FockTruncation& T)
{
    const cplx al = generator_coefficient(n, m, L);
    return linear_ladder(al, std::conj(al), T);
}

FockMatrix M_generator(int j, int n, int m, const PeriodicVectorPotential& A, const Lattice2D& L,
                       const FockTruncation& T)
{
    if (j != 0 && j != 1) throw ConfigError("M_generator is defined for j in {0,1} only");
    const FockMatrix x = linear_ladder(A.g.coeff(n, m), A.g_bar.coeff(n, m), T);
    if (j == 0) return x;
    return jordan(I_generator(n, m, L, T), x);
}

CMatrix hermitian_exp_i(const CMatrix& h, double t)
{
    const std::size_t d = h.rows();
    if (t == 0.0 || h.is_zero()) return CMatrix::identity(d);
    const auto ep = eigh(h);
    CMatrix vd = ep.vectors;
    for (std::size_t k = 0; k < d; ++k) {
        const cplx ph = std::exp(cplx(0.0, t * ep.values[k]));
        for (std::size_t i = 0; i < d; ++i) vd(i, k) *= ph;
    }
    return vd * ep.vectors.adjoint();
}

FockMatrix displacement_exp(double t, int n, int m, const Lattice2D& L, const FockTruncation& T)
{
    if (n == 0 && m == 0) return CMatrix::identity(T.dim());
    return hermitian_exp_i(I_generator(n, m, L, T), t);
}

} // namespace magbloch
