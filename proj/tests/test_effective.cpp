#include "magbloch/effective.hpp"
#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/moyal.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace magbloch;

namespace {

constexpr double pi = std::numbers::pi;

double block_diff(const BlockSymbol& a, const BlockSymbol& b)
{
    REQUIRE(a.size == b.size);
    double r = 0.0;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) r = std::max(r, max_coeff_diff(a.blocks[i], b.blocks[i]));
    return r;
}

} // namespace

TEST_CASE("flux and δ are tied by θ = 2πδ²")
{
    const RationalFlux f = make_flux(1, 5);
    const double d = delta_from_flux(f);
    CHECK(2 * pi * d * d == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_NOTHROW(require_flux_delta(f, d));
    CHECK_THROWS_AS(require_flux_delta(f, 0.2), ConfigError);
    CHECK_THROWS_AS(single_band_model(harper_potential(), square_lattice(), 0.5, f, {}, 0.2), ConfigError);
}

TEST_CASE("single-band model on the square lattice")
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    const RationalFlux f = make_flux(1, 3);
    const double lambda = 0.5;
    const EffectiveModel full = single_band_model(V, L, lambda, f);
    const double d = full.delta;
    // λ* + (δ² − 2π²λ*δ⁴) V
    const FourierSeries2D expect =
        FourierSeries2D::constant(lambda).plus(V.scaled(d * d - 2 * pi * pi * lambda * std::pow(d, 4)));
    CHECK(max_coeff_diff(full.blocks(0, 0), expect) < 1e-12);

    const EffectiveModel second = single_band_model(V, L, lambda, f, {true, false});
    const auto r_full = spectrum(full.family, 16, 16), r_second = spectrum(second.family, 16, 16);
    const double factor = std::abs(1 - 2 * pi * pi * lambda * d * d);
    REQUIRE(r_full.bands.size() == r_second.bands.size());
    for (std::size_t i = 0; i < r_full.bands.size(); ++i) {
        CHECK(std::abs((r_full.bands[i].lo - lambda) - factor * (r_second.bands[i].lo - lambda)) < 1e-12);
        CHECK(std::abs((r_full.bands[i].hi - lambda) - factor * (r_second.bands[i].hi - lambda)) < 1e-12);
    }

    const double vmin = -4.0, vmax = 4.0, bound = std::pow(d, 4) * lambda / 2 * 4 * pi * pi * 4;
    for (const auto& b : r_full.bands) {
        CHECK(b.lo >= lambda + d * d * vmin - bound - 1e-12);
        CHECK(b.hi <= lambda + d * d * vmax + bound + 1e-12);
    }
}

TEST_CASE("single-band grades coincide with the SAPT output")
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    const FockTruncation T = make_truncation(40, 6);
    for (int n : {0, 2}) {
        const SaptResult r = run_sapt(assemble_truncated(V, zero_vector_potential(L), L, T), {n}, 4);
        const EffectiveModel m = single_band_model(V, L, n + 0.5, make_flux(1, 5));
        for (int j = 0; j <= 4; ++j) CHECK(block_diff(m.grades[j], r.effective.h[j]) < 1e-10);
    }
}

TEST_CASE("two-band model: constant coupling has the closed-form spectrum")
{
    const Lattice2D L = square_lattice();
    const auto f1 = FourierSeries2D::from_modes({{{0, 0}, 0.4}}, true);
    const auto f2 = FourierSeries2D::from_modes({{{0, 0}, -0.3}}, true);
    const auto A = make_vector_potential(f1, f2, L);
    const cplx gamma = A.g.coeff(0, 0);
    for (int n_star : {0, 1}) {
        const RationalFlux f = make_flux(1, 3);
        const EffectiveModel m = two_band_model(A, L, n_star, f);
        const double d = m.delta;
        const double s = std::sqrt(0.25 + d * d * (n_star + 1) * std::norm(gamma));
        const auto e = eigvalsh(m.family.matrix_at(0.4, 1.3));
        REQUIRE(e.size() == 6);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(e[i] - (n_star + 1 - s)) < 1e-12);
            CHECK(std::abs(e[i + 3] - (n_star + 1 + s)) < 1e-12);
        }
    }
}

TEST_CASE("two-band model: GG† reduction and block-square identity")
{
    const Lattice2D L = square_lattice();
    const auto A = one_mode_vector_potential(0.6, L);
    for (long q : {2L, 3L, 5L}) {
        const RationalFlux f = make_flux(1, q);
        const EffectiveModel m = two_band_model(A, L, 1, f);
        CHECK(m.family.dim() == std::size_t(2 * q));
        const double period = m.family.beta_period();
        for (double b1 : beta_grid(period, 4))
            for (double b2 : beta_grid(period, 4)) {
                const CMatrix h = m.family.matrix_at(b1, b2);
                CHECK(hermiticity_residual(h) < 1e-12);
                CHECK(sorted_list_distance(eigvalsh(h), two_band_eigs_via_GGdag(A, 1, f, b1, b2)) < 1e-10);
                CHECK(block_square_residual(A, 1, f, b1, b2) < 1e-10);
            }
        const auto r1 = spectrum(m.family, 8, 8), r2 = spectrum_via_GGdag(A, L, 1, f, 8, 8);
        CHECK(hausdorff_interval_sets(r1.bands, r2.bands) < 1e-10);
    }
    CHECK_THROWS_AS(two_band_model(zero_vector_potential(L), L, 0, make_flux(1, 2)), ConfigError);
}

TEST_CASE("two-band model at δ -> 0 and against SAPT")
{
    const Lattice2D L = square_lattice();
    const auto A = one_mode_vector_potential(0.5, L);
    const EffectiveModel m0 = two_band_model(A, L, 0, make_flux(1, 4), 0.0 + delta_from_flux(make_flux(1, 4)));
    CHECK(m0.grades.size() >= 2);
    const BlockSymbol& h0 = m0.grades[0];
    CHECK(std::abs(h0(0, 0).coeff(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(h0(1, 1).coeff(0, 0) - 1.5) < 1e-15);

    const FockTruncation T = make_truncation(30, 6);
    const SaptResult r = run_sapt(assemble_truncated(FourierSeries2D(true), A, L, T), {0, 1}, 2);
    CHECK(block_diff(m0.grades[0], r.effective.h[0]) < 1e-10);
    CHECK(block_diff(m0.grades[1], r.effective.h[1]) < 1e-10);
}
