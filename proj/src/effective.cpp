#include "magbloch/effective.hpp"

#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace magbloch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

BlockSymbol scalar_block(const FourierSeries2D& f)
{
    BlockSymbol b;
    b.size = 1;
    b.blocks = {f};
    return b;
}

BlockSymbol sum_grades(const std::vector<BlockSymbol>& g, double delta)
{
    BlockSymbol r;
    r.size = g.front().size;
    r.blocks.assign(r.size * r.size, FourierSeries2D(true));
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < r.blocks.size(); ++i)
            r.blocks[i] = r.blocks[i].plus(g[j].blocks[i].scaled(std::pow(delta, double(j))));
    return r;
}

CMatrix two_band_matrix(const PeriodicVectorPotential& A, int n_star, double delta, const RotationPair& rep,
                        CMatrix* G_out = nullptr)
{
    const std::size_t q = rep.dim();
    const double c = delta * std::sqrt(double(n_star) + 1.0);
    const CMatrix G = quantize_operator(A.g, rep, Convention::harper);
    const CMatrix Gb = quantize_operator(A.g_bar, rep, Convention::harper);
    CMatrix h(2 * q, 2 * q);
    for (std::size_t i = 0; i < q; ++i) {
        h(i, i) = double(n_star) + 0.5;
        h(q + i, q + i) = double(n_star) + 1.5;
    }
    h.set_block(0, q, c * G);
    h.set_block(q, 0, c * Gb);
    if (G_out) *G_out = G;
    return h;
}

} // namespace

double delta_from_flux(const RationalFlux& flux)
{
    if (flux.theta() < 0.0) throw ConfigError("strong-field flux must be non-negative");
    return std::sqrt(flux.theta() / two_pi);
}

void require_flux_delta(const RationalFlux& flux, double delta)
{
    if (std::abs(two_pi * delta * delta - flux.theta()) > 1e-12 * std::max(1.0, flux.theta())) {
        std::ostringstream os;
        os << "commensurability: 2*pi*delta^2 = " << two_pi * delta * delta << " differs from flux "
           << flux.p << "/" << flux.q;
        throw ConfigError(os.str());
    }
}

EffectiveModel single_band_model(const FourierSeries2D& V, const Lattice2D& L, double lambda_star,
                                 const RationalFlux& flux_in, SingleBandTerms terms, std::optional<double> delta)
{
    if (!V.is_real_valued()) throw ConfigError("single-band model needs a real-valued potential");
    const RationalFlux flux = make_flux(flux_in.p, flux_in.q);
    const double d = delta ? *delta : delta_from_flux(flux);
    require_flux_delta(flux, d);
    std::vector<BlockSymbol> g(5, scalar_block(FourierSeries2D(true)));
    g[0] = scalar_block(FourierSeries2D::constant(lambda_star));
    if (terms.second_order) g[2] = scalar_block(V);
    if (terms.fourth_order) g[4] = scalar_block(laplacian_DzDzbar(V, L).scaled(0.5 * lambda_star));
    BlockSymbol total = sum_grades(g, d);
    const FourierSeries2D sym = total.blocks[0];
    EffectiveModel m{{static_cast<int>(std::lround(lambda_star - 0.5))},
                     d,
                     flux,
                     std::move(g),
                     std::move(total),
                     quantize_series(sym, flux, 1, Convention::harper)};
    return m;
}

EffectiveModel two_band_model(const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                              const RationalFlux& flux_in, std::optional<double> delta)
{
    (void)L;
    if (A.is_zero()) throw ConfigError("two-band model needs a nonzero vector potential");
    if (n_star < 0) throw ConfigError("n_star must be non-negative");
    const RationalFlux flux = make_flux(flux_in.p, flux_in.q);
    const double d = delta ? *delta : delta_from_flux(flux);
    require_flux_delta(flux, d);
    const double c = std::sqrt(double(n_star) + 1.0);
    BlockSymbol h0, h1;
    h0.size = h1.size = 2;
    h0.blocks.assign(4, FourierSeries2D(true));
    h1.blocks.assign(4, FourierSeries2D(true));
    h0(0, 0) = FourierSeries2D::constant(double(n_star) + 0.5);
    h0(1, 1) = FourierSeries2D::constant(double(n_star) + 1.5);
    h1(0, 1) = A.g.scaled(c);
    h1(1, 0) = A.g_bar.scaled(c);
    std::vector<BlockSymbol> g{h0, h1};
    BlockSymbol total = sum_grades(g, d);
    MagneticBlochFamily fam(flux, 2 * static_cast<std::size_t>(flux.q), [A, n_star, d, flux](double b1, double b2) {
        return two_band_matrix(A, n_star, d, clock_shift_pair(flux, 1, b1, b2));
    });
    return EffectiveModel{{n_star, n_star + 1}, d, flux, std::move(g), std::move(total), std::move(fam)};
}

CMatrix quantize_blocks(const BlockSymbol& s, const RotationPair& rep)
{
    const std::size_t n = rep.dim();
    CMatrix h(s.size * n, s.size * n);
    for (std::size_t i = 0; i < s.size; ++i)
        for (std::size_t j = 0; j < s.size; ++j) h.set_block(i * n, j * n, quantize_operator(s(i, j), rep, Convention::harper));
    return h;
}

std::vector<double> two_band_eigs_via_GGdag(const PeriodicVectorPotential& A, int n_star, const RationalFlux& flux,
                                            double beta1, double beta2)
{
    const double d = delta_from_flux(flux);
    const RotationPair rep = clock_shift_pair(flux, 1, beta1, beta2);
    const CMatrix G = quantize_operator(A.g, rep, Convention::harper);
    const auto lam = eigvalsh(G * G.adjoint());
    std::vector<double> out;
    const double centre = double(n_star) + 1.0;
    for (double l : lam) {
        if (l < -1e-10) throw NumericError("GG^dagger has a negative eigenvalue; Hermiticity bug");
        const double s = std::sqrt(0.25 + d * d * centre * std::max(0.0, l));
        out.push_back(centre - s);
        out.push_back(centre + s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpectrumReport spectrum_via_GGdag(const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                                  const RationalFlux& flux_in, int n1, int n2, double tol_band)
{
    (void)L;
    if (A.is_zero()) throw ConfigError("two-band model needs a nonzero vector potential");
    const RationalFlux flux = make_flux(flux_in.p, flux_in.q);
    // diagonal carrier makes spectrum() reuse its band bookkeeping
    MagneticBlochFamily fam(flux, 2 * static_cast<std::size_t>(flux.q), [A, n_star, flux](double b1, double b2) {
        std::vector<cplx> d;
        for (double e : two_band_eigs_via_GGdag(A, n_star, flux, b1, b2)) d.push_back(e);
        return CMatrix::diagonal(d);
    });
    return spectrum(fam, n1, n2, tol_band);
}

double block_square_residual(const PeriodicVectorPotential& A, int n_star, const RationalFlux& flux, double beta1,
                             double beta2)
{
    const double d = delta_from_flux(flux);
    const RotationPair rep = clock_shift_pair(flux, 1, beta1, beta2);
    CMatrix G;
    CMatrix h = two_band_matrix(A, n_star, d, rep, &G);
    const std::size_t q = rep.dim();
    const double centre = double(n_star) + 1.0;
    for (std::size_t i = 0; i < 2 * q; ++i) h(i, i) -= centre;
    const CMatrix lhs = h * h;
    CMatrix rhs(2 * q, 2 * q);
    rhs.set_block(0, 0, (d * d * centre) * (G * G.adjoint()));
    rhs.set_block(q, q, (d * d * centre) * (G.adjoint() * G));
    for (std::size_t i = 0; i < 2 * q; ++i) rhs(i, i) += 0.25;
    return max_abs_diff(lhs, rhs);
}

} // namespace magbloch
