#pragma once

#include "magbloch/moyal.hpp"
#include "magbloch/quantize.hpp"

#include <optional>
#include <vector>

namespace magbloch {

// Strong-field flux relation: θ = 2πδ².
double delta_from_flux(const RationalFlux& flux);
void require_flux_delta(const RationalFlux& flux, double delta);

struct EffectiveModel {
    std::vector<int> band_set;
    double delta = 0.0;
    RationalFlux flux;
    std::vector<BlockSymbol> grades; // δ^j coefficient symbols
    BlockSymbol blocks;              // Σ_j δ^j grades[j]
    MagneticBlochFamily family;
};

struct SingleBandTerms {
    bool second_order = true; // δ² V
    bool fourth_order = true; // δ⁴ (λ*/2)|D_z|² V
};

// λ* + δ²V + δ⁴(λ*/2)|D_z|²V, Harper-quantized at ι = +1.
EffectiveModel single_band_model(const FourierSeries2D& V, const Lattice2D& L, double lambda_star,
                                 const RationalFlux& flux, SingleBandTerms terms = {},
                                 std::optional<double> delta = std::nullopt);

// [[n*+½, δ√(n*+1) G], [δ√(n*+1) G†, n*+3/2]] with G = Op(g); lower level first.
EffectiveModel two_band_model(const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                              const RationalFlux& flux, std::optional<double> delta = std::nullopt);

// Quantize a block symbol on an arbitrary representation (row-major blocks of size dim).
CMatrix quantize_blocks(const BlockSymbol& s, const RotationPair& rep);

// (n*+1) ± √(¼ + δ²(n*+1)λ) over λ ∈ spec(GG†) at one β point, sorted.
std::vector<double> two_band_eigs_via_GGdag(const PeriodicVectorPotential& A, int n_star, const RationalFlux& flux,
                                            double beta1, double beta2);
SpectrumReport spectrum_via_GGdag(const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                                  const RationalFlux& flux, int n1 = 16, int n2 = 16, double tol_band = -1.0);
// ‖(H - (n*+1))² - (¼ + δ²(n*+1) blockdiag(GG†, G†G))‖_max at one β point.
double block_square_residual(const PeriodicVectorPotential& A, int n_star, const RationalFlux& flux, double beta1,
                             double beta2);

} // namespace magbloch
