#pragma once

#include "magbloch/symbols.hpp"

#include <vector>

namespace magbloch {

using GradedModes = std::map<int, ModeMatrixMap>;

struct MoyalOptions {
    // Grades contributed by one derivative order: 1 follows the proof's bookkeeping,
    // 2 follows the physical commutator [Q_s, P_s] = iιδ².
    int weight = 1;
    int iota = 1;
};

struct MoyalSeries : OperatorSymbol {
    int order_built = 0;
};

// Grade-n part of A♯B.
ModeMatrixMap moyal_term(const GradedModes& A, const GradedModes& B, int n, const MoyalOptions& opt = {});
ModeMatrixMap moyal_term(const OperatorSymbol& A, const OperatorSymbol& B, int n, const MoyalOptions& opt = {});
// All grades 0..max_grade of A♯B.
GradedModes moyal_product(const GradedModes& A, const GradedModes& B, int max_grade, const MoyalOptions& opt = {});

// Symbol of the pointwise adjoint: M'(k) = M(-k)†.
GradedModes symbol_adjoint(const GradedModes& A);
ModeMatrixMap left_multiply(const CMatrix& P, const ModeMatrixMap& m);
ModeMatrixMap right_multiply(const ModeMatrixMap& m, const CMatrix& P);
ModeMatrixMap mode_sum(const ModeMatrixMap& a, const ModeMatrixMap& b, cplx sb = 1.0);
// Max over modes of entrywise max-norm on the leading corner x corner block.
double corner_norm(const ModeMatrixMap& m, std::size_t corner);

CMatrix band_projector(const std::vector<int>& band, const FockTruncation& T);

MoyalSeries build_projection(const OperatorSymbol& H, const std::vector<int>& band, int order,
                             const MoyalOptions& opt = {});
MoyalSeries build_intertwiner(const MoyalSeries& pi, const std::vector<int>& band, int order,
                              const MoyalOptions& opt = {});

// m x m blocks of Fourier series, row-major.
struct BlockSymbol {
    std::size_t size = 0;
    std::vector<FourierSeries2D> blocks;
    const FourierSeries2D& operator()(std::size_t i, std::size_t j) const { return blocks[i * size + j]; }
    FourierSeries2D& operator()(std::size_t i, std::size_t j) { return blocks[i * size + j]; }
    double max_abs() const;
};

struct EffectiveSymbols {
    std::vector<int> band;
    std::vector<BlockSymbol> h; // h[j] for j = 0..order
};

EffectiveSymbols effective_symbol(const OperatorSymbol& H, const MoyalSeries& pi, const MoyalSeries& u, int order,
                                  const MoyalOptions& opt = {});

struct SaptResiduals {
    std::vector<double> pi_idempotent, pi_hermitian, pi_commutes, u_unitary, u_intertwines;
    double max() const;
};
SaptResiduals sapt_residuals(const OperatorSymbol& H, const MoyalSeries& pi, const MoyalSeries& u,
                             const std::vector<int>& band, const MoyalOptions& opt = {});

struct SaptResult {
    MoyalSeries pi, u;
    EffectiveSymbols effective;
    SaptResiduals residuals;
};
SaptResult run_sapt(const OperatorSymbol& H, const std::vector<int>& band, int order, const MoyalOptions& opt = {});

} // namespace magbloch
