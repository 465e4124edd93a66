#include "magbloch/eigensolver.hpp"
#include "magbloch/spectra.hpp"
#include "magbloch/symbols.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace magbloch;

namespace {

constexpr double pi = std::numbers::pi;

double remainder_slope(const FourierSeries2D& V, const PeriodicVectorPotential& A, const FockTruncation& T,
                       const std::optional<std::vector<int>>& band)
{
    const std::vector<double> ds{0.2, 0.1, 0.05};
    std::vector<double> r;
    for (double d : ds) r.push_back(remainder_sup(V, A, square_lattice(), T, d, band, 2));
    return fit_loglog_slope(ds, r).slope;
}

} // namespace

TEST_CASE("V terms")
{
    const Lattice2D L = square_lattice();
    const FockTruncation T = make_truncation(20, 4);
    const auto V = harper_potential();
    const auto V2 = V_term(2, V, L, T);
    for (const auto& [k, M] : V2) CHECK(max_abs_diff(M, V.coeff(k.first, k.second) * CMatrix::identity(T.dim())) == 0.0);

    // V_3 = -(1/√2)(D_z V · a + D_zbar V · a†)
    const auto [a, ad] = ladder(T);
    const auto dz = directional_derivative_Dz(V, L), dzb = directional_derivative_Dzbar(V, L);
    const auto V3 = V_term(3, V, L, T);
    for (const auto& [k, M] : V3) {
        CMatrix expect = (-dz.coeff(k.first, k.second) / std::sqrt(2.0)) * a;
        expect.add_scaled(-dzb.coeff(k.first, k.second) / std::sqrt(2.0), ad);
        CHECK(max_abs_diff(M, expect) < 1e-12);
    }
    for (int j = 3; j <= 5; ++j)
        for (const auto& [k, M] : V_term(j, FourierSeries2D::constant(1.0), L, T)) CHECK(M.is_zero());
}

TEST_CASE("W terms")
{
    const Lattice2D L = square_lattice();
    const FockTruncation T = make_truncation(20, 4);
    CHECK(W_term(1, zero_vector_potential(L), L, T).empty());
    const auto A = one_mode_vector_potential(0.3, L);
    for (const auto& [k, M] : W_term(1, A, L, T))
        CHECK(max_abs_diff(M, linear_ladder(A.g.coeff(k.first, k.second), A.g_bar.coeff(k.first, k.second), T)) <
              1e-15);
    CHECK(symbol_hermiticity_residual(W_term(2, A, L, T)) < 1e-12);
}

TEST_CASE("assembled truncated symbols")
{
    const Lattice2D L = square_lattice();
    const FockTruncation T = make_truncation(24, 6);
    const auto free = assemble_truncated(FourierSeries2D(true), zero_vector_potential(L), L, T);
    CHECK(free.has_grade(0));
    for (int j = 1; j <= 4; ++j) CHECK_FALSE(free.has_grade(j));

    const auto H = assemble_truncated(harper_potential(), zero_vector_potential(L), L, T);
    CHECK_FALSE(H.has_grade(1));
    for (int j : {0, 2, 3, 4}) CHECK(H.has_grade(j));
    CHECK(H.max_grade() == 4);
    CHECK(symbol_hermiticity_residual(H) < 1e-12);

    const auto H2 = assemble_truncated(harper_potential(), one_mode_vector_potential(0.5, L), L, T);
    for (int j : {0, 1, 2}) CHECK(H2.has_grade(j));
    CHECK(H2.max_grade() == 2);
    CHECK(natural_index(one_mode_vector_potential(0.5, L)) == 0);
    CHECK(natural_index(zero_vector_potential(L)) == 1);

    // evaluation is the δ-weighted sum of grade evaluations
    const double d = 0.17, p = 0.3, x = 0.71;
    CMatrix sum(T.dim(), T.dim());
    for (int j = 0; j <= H.max_grade(); ++j) sum.add_scaled(std::pow(d, j), eval_grade(H, j, p, x).matrix);
    CHECK(max_abs_diff(sum, eval_symbol(H, d, p, x).matrix) < 1e-12);
}

TEST_CASE("exact symbol")
{
    const Lattice2D L = square_lattice();
    const FockTruncation T = make_truncation(30, 6);
    const auto V = harper_potential();
    const auto A = one_mode_vector_potential(0.4, L);
    CHECK(max_abs_diff(eval_exact(V, A, L, T, 0.0, 0.2, 0.3).matrix, xi_matrix(T)) < 1e-14);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const double d = 0.3 * u(rng);
        CHECK(hermiticity_residual(eval_exact(V, A, L, T, d, u(rng), u(rng)).matrix) < 1e-10);
    }

    // dE/d(δ²) at the origin equals V(0,0) = 4 for every reliable Landau level
    const double d = 1e-3;
    const auto e = eigvalsh(eval_exact(V, zero_vector_potential(L), L, T, d, 0.0, 0.0).matrix);
    for (int n = 0; n < 8; ++n) CHECK((e[n] - (n + 0.5)) / (d * d) == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("remainder vanishes at δ = 0 and scales with the truncation order")
{
    const Lattice2D L = square_lattice();
    const FockTruncation T = make_truncation(80, 6);
    const auto V = harper_potential();
    CHECK(remainder_norm(V, zero_vector_potential(L), L, T, 0.0, 0.1, 0.2) < 1e-14);
    CHECK(std::abs(remainder_slope(V, zero_vector_potential(L), T, std::nullopt) - 4.0) < 0.5);
    CHECK(std::abs(remainder_slope(V, one_mode_vector_potential(1.0, L), T, std::vector<int>{0}) - 3.0) < 0.5);
}
