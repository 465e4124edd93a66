#pragma once

#include "magbloch/canonical_map.hpp"
#include "magbloch/effective.hpp"
#include "magbloch/fock.hpp"
#include "magbloch/quantize.hpp"
#include "magbloch/spectra.hpp"
#include "magbloch/symbols.hpp"

#include <vector>

namespace magbloch {

struct OracleBasis {
    int n_cells = 1;
    int n_grid = 8;
    FockTruncation fock;
    std::size_t slow_dim() const { return static_cast<std::size_t>(n_cells) * static_cast<std::size_t>(n_grid); }
    std::size_t dim() const { return slow_dim() * fock.dim(); }
};

constexpr double default_memory_budget = 2.0e9; // bytes for one dense D x D matrix

// Rejects grids that do not resolve n_modes or exceed the memory budget.
OracleBasis make_oracle_basis(int n_cells, int n_grid, const FockTruncation& fock, int n_modes,
                              double memory_budget = default_memory_budget);

// Slow unitaries on the periodic grid: U = e^{-i2πQ_s}, V = e^{-i2πP_s} (a circular shift by ιθ per period).
// Optional Bloch twists multiply U and V by e^{-iβ1}, e^{-iβ2}.
RotationPair oracle_rotation_pair(const OracleBasis& basis, double theta, int iota = 1, double beta1 = 0.0,
                                  double beta2 = 0.0);

// 1 ⊗ Ξ + Σ_k Op_s(e_k) ⊗ (δ E_k∘(g a + ḡ a†) + δ² v_k E_k)
CMatrix build_full_matrix(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                          const OracleBasis& basis, double delta, int iota = 1, double beta1 = 0.0,
                          double beta2 = 0.0);

struct ClusterOptions {
    double margin = 0.1;
    long expected_count = -1; // checked when non-negative
};

// Eigenvalues within half a Landau gap of λ*; gap closure raises NumericError.
std::vector<double> band_cluster(const std::vector<double>& eigs, double lambda_star, ClusterOptions opt = {});

struct OrderFitReport {
    std::vector<double> delta;
    std::vector<double> distance;
    SlopeFit fit;
};

OrderFitReport order_fit(const std::vector<std::vector<double>>& model, const std::vector<std::vector<double>>& oracle,
                         const std::vector<double>& deltas, double floor = 1e-12);

// Default sweep: fluxes with δ ≈ 0.25, 0.18, 0.125, 0.09.
std::vector<RationalFlux> default_oracle_fluxes();

struct OracleRun {
    RationalFlux flux;
    double delta = 0.0;
    std::vector<double> oracle_band; // concatenated over twists
    std::vector<double> model_band;
    double distance = 0.0; // max over twists of the matched sorted distance
};

struct OracleSetup {
    int n_cells = 1;
    int grid_multiple = 1; // n_grid = q * grid_multiple, raised until n_grid >= 4 N_modes
    FockTruncation fock = make_truncation(30, 6);
    int twists = 2; // Bloch twists per direction on [0, π/q]; 1 = untwisted
};

std::vector<std::pair<double, double>> twist_points(const OracleSetup& s, const RationalFlux& flux);

// Oracle vs single-band model on the same slow representation.
OracleRun oracle_single_band(const FourierSeries2D& V, const Lattice2D& L, int n_star, const RationalFlux& flux,
                             SingleBandTerms terms, bool constant_only, const OracleSetup& setup = {});
// Oracle vs two-band model; clusters at n*+½ and n*+3/2 are concatenated.
OracleRun oracle_two_band(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                          const RationalFlux& flux, const OracleSetup& setup = {});

} // namespace magbloch
