#pragma once

#include "magbloch/complex_matrix.hpp"
#include "magbloch/lattice.hpp"

#include <utility>

namespace magbloch {

using FockMatrix = CMatrix;

struct FockTruncation {
    int n_max = 40;
    int guard = 6;
    std::size_t dim() const { return static_cast<std::size_t>(n_max) + 1; }
    // Size of the corner on which reported quantities are computed.
    std::size_t reliable_dim() const { return static_cast<std::size_t>(n_max + 1 - guard); }
};

FockTruncation make_truncation(int n_max, int guard = 6);
// Rejects truncations with n_max < 2*order + max_band + guard.
void require_truncation_budget(const FockTruncation& T, int order, int max_band);

std::pair<FockMatrix, FockMatrix> ladder(const FockTruncation& T);
FockMatrix xi_matrix(const FockTruncation& T);

// (n z_b - m z_a)/√2
cplx generator_coefficient(int n, int m, const Lattice2D& L);
// nP_f - mQ_f = α a + conj(α) a†
FockMatrix I_generator(int n, int m, const Lattice2D& L, const FockTruncation& T);
// g a + g_bar a† at one mode, given the two coefficients.
FockMatrix linear_ladder(cplx g, cplx g_bar, const FockTruncation& T);
// j=0: g a + g_bar a†; j=1: I·(g a + g_bar a†), symmetrized so the truncation stays Hermitian-reflected.
FockMatrix M_generator(int j, int n, int m, const PeriodicVectorPotential& A, const Lattice2D& L,
                       const FockTruncation& T);
// exp(i t I_{n,m}) from the eigendecomposition of the Hermitian generator.
FockMatrix displacement_exp(double t, int n, int m, const Lattice2D& L, const FockTruncation& T);
// exp(i t H) for Hermitian H.
CMatrix hermitian_exp_i(const CMatrix& h, double t);

} // namespace magbloch
