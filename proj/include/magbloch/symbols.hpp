#pragma once

#include "magbloch/fock.hpp"
#include "magbloch/lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace magbloch {

using ModeMatrixMap = std::map<Mode, CMatrix>;

// δ-graded family of Fourier-mode-indexed Fock matrices.
struct OperatorSymbol {
    std::map<int, ModeMatrixMap> grading;
    FockTruncation truncation;
    Lattice2D lattice;

    const ModeMatrixMap& grade(int j) const;
    bool has_grade(int j) const { return grading.count(j) && !grading.at(j).empty(); }
    int max_grade() const { return grading.empty() ? -1 : grading.rbegin()->first; }
    void accumulate(int j, const Mode& k, const CMatrix& m);
};

struct EvaluatedSymbol {
    double p_s = 0.0, x_s = 0.0;
    CMatrix matrix;
};

// Σ_k e_k(p, x) M_k
CMatrix eval_modes(const ModeMatrixMap& modes, double p_s, double x_s, std::size_t dim);
EvaluatedSymbol eval_symbol(const OperatorSymbol& s, double delta, double p_s, double x_s);
EvaluatedSymbol eval_grade(const OperatorSymbol& s, int j, double p_s, double x_s);

// Mode-reflection residual: max over grades and modes of |M(k) - M(-k)†|.
double symbol_hermiticity_residual(const OperatorSymbol& s);
double symbol_hermiticity_residual(const ModeMatrixMap& m);

// (i2π)^{j-2}/(j-2)! I^{j-2} v_k
ModeMatrixMap V_term(int j, const FourierSeries2D& V, const Lattice2D& L, const FockTruncation& T);
// (i2π)^{j-1}/(j-1)! I^{j-1}(g a + g_bar a†), symmetrized
ModeMatrixMap W_term(int j, const PeriodicVectorPotential& A, const Lattice2D& L, const FockTruncation& T);

// 1 when A vanishes, 0 otherwise.
int natural_index(const PeriodicVectorPotential& A);
// Ξ plus H_j = W_j + V_j for j = 1 .. 2(1 + natural).
OperatorSymbol assemble_truncated(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                                  const FockTruncation& T);

// Full symbol at fixed δ with exact displacement factors, cached per mode.
class ExactSymbol {
public:
    ExactSymbol(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                const FockTruncation& T, double delta);
    CMatrix at(double p_s, double x_s) const;
    // Mode matrices of H_δ - Ξ (the Ξ part sits at mode (0,0) separately).
    const ModeMatrixMap& modes() const { return modes_; }
    const FockTruncation& truncation() const { return T_; }

private:
    FockTruncation T_;
    ModeMatrixMap modes_;
};

EvaluatedSymbol eval_exact(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                           const FockTruncation& T, double delta, double p_s, double x_s);

// Without a band: ‖R Ξ⁻¹‖ on the guard corner (domain-weighted norm).
// With a band: ‖R π_r‖ on the guard corner.
double remainder_norm(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                      const FockTruncation& T, double delta, double p_s, double x_s,
                      const std::optional<std::vector<int>>& band = std::nullopt);
// Max of remainder_norm over a grid x grid lattice of points on [0,1)².
double remainder_sup(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                     const FockTruncation& T, double delta, const std::optional<std::vector<int>>& band,
                     int grid = 4);

} // namespace magbloch
