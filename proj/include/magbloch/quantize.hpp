#pragma once

#include "magbloch/complex_matrix.hpp"
#include "magbloch/lattice.hpp"
#include "magbloch/spectra.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace magbloch {

struct RationalFlux {
    long p = 0;
    long q = 1;
    double theta() const { return double(p) / double(q); }
};

// Reduces p/q and moves the sign into p.
RationalFlux make_flux(long p, long q);

enum class Convention { hofstadter, harper };
Convention parse_convention(const std::string& s);
const char* convention_name(Convention c);

// Matrix with one nonzero per column: M e_j = value[j] e_{target[j]}.
class WeylMonomial {
public:
    WeylMonomial() = default;
    static WeylMonomial identity(std::size_t n);
    static WeylMonomial diagonal(std::vector<cplx> d);
    // e_j -> phase * e_{(j + shift) mod n}
    static WeylMonomial cyclic_shift(std::size_t n, long shift, cplx phase = 1.0);

    std::size_t size() const { return target_.size(); }
    WeylMonomial operator*(const WeylMonomial& o) const;
    WeylMonomial inverse() const;
    WeylMonomial pow(long k) const;
    // h += s * M
    void accumulate_into(CMatrix& h, cplx s) const;
    CMatrix to_matrix() const;

private:
    std::vector<std::size_t> target_;
    std::vector<cplx> value_;
};

// Unitaries of a finite representation of the rotation algebra, UV = e^{-i2πιθ} VU.
struct RotationPair {
    WeylMonomial U, V;
    double theta = 0.0;
    int iota = -1;
    std::size_t dim() const { return U.size(); }
    // Monomial of e^{i2π(n p + m x)} under the chosen convention, including its symmetrization phase.
    WeylMonomial monomial(int n, int m, Convention c) const;
};

RotationPair clock_shift_pair(const RationalFlux& flux, int iota, double beta1, double beta2);
std::pair<CMatrix, CMatrix> clock_shift(const RationalFlux& flux, int iota, double beta1, double beta2);

// Σ_k f_k · monomial(k); no reality requirement.
CMatrix quantize_operator(const FourierSeries2D& f, const RotationPair& rep, Convention c);

class MagneticBlochFamily {
public:
    using Builder = std::function<CMatrix(double, double)>;
    MagneticBlochFamily(RationalFlux flux, std::size_t dim, Builder b, bool hermitian = true)
        : flux_(flux), dim_(dim), build_(std::move(b)), hermitian_(hermitian)
    {
    }
    const RationalFlux& flux() const { return flux_; }
    std::size_t dim() const { return dim_; }
    bool hermitian() const { return hermitian_; }
    CMatrix matrix_at(double beta1, double beta2) const { return build_(beta1, beta2); }
    // Period of the sampled torus in both directions.
    double beta_period() const;

private:
    RationalFlux flux_;
    std::size_t dim_;
    Builder build_;
    bool hermitian_;
};

MagneticBlochFamily quantize_series(const FourierSeries2D& f, const RationalFlux& flux, int iota, Convention c);

struct SpectrumReport {
    RationalFlux flux;
    int grid1 = 0, grid2 = 0;
    double tol_band = 0.0;
    std::vector<std::vector<double>> samples; // eigenvalues per grid point, row-major in (β1, β2)
    std::vector<Interval> raw_bands;          // band index i: range of the i-th eigenvalue
    std::vector<Interval> bands;              // merged
};

// tol_band < 0 selects 1e-6 of the spectral width.
SpectrumReport spectrum(const MagneticBlochFamily& fam, int n1 = 16, int n2 = 16, double tol_band = -1.0,
                        bool keep_samples = false);
// Grid points of spectrum(): β_i = period * i / n on [0, period).
std::vector<double> beta_grid(double period, int n);

std::vector<RationalFlux> reduced_fluxes(long q_max);
std::vector<SpectrumReport> butterfly(const FourierSeries2D& f, long q_max, int iota, Convention c, int n1 = 16,
                                      int n2 = 16, double tol_band = -1.0);

std::vector<double> almost_mathieu_spectrum(const RationalFlux& theta, double beta, int N);
// Band set of the union over a beta grid of periodic almost-Mathieu spectra.
std::vector<Interval> almost_mathieu_bands(const RationalFlux& theta, int n_beta, int N, double tol_band = -1.0);

} // namespace magbloch
