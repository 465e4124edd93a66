#include "magbloch/errors.hpp"
#include "magbloch/fock.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace magbloch;

TEST_CASE("ladder operators")
{
    const auto [a1, ad1] = ladder(make_truncation(1, 0));
    CHECK(a1(0, 1) == 1.0);
    CHECK(a1(0, 0) == 0.0);
    CHECK(a1(1, 0) == 0.0);

    const FockTruncation T = make_truncation(12, 2);
    const auto [a, ad] = ladder(T);
    const CMatrix c = commutator(a, ad);
    for (std::size_t i = 0; i < T.dim(); ++i)
        for (std::size_t j = 0; j < T.dim(); ++j) {
            const double expect = i != j ? 0.0 : (i == T.dim() - 1 ? -double(T.n_max) : 1.0);
            CHECK(std::abs(c(i, j) - expect) < 1e-13);
        }
    CHECK(max_abs_diff(ad, a.adjoint()) == 0.0);
}

TEST_CASE("harmonic symbol")
{
    const FockTruncation T = make_truncation(10, 2);
    const CMatrix xi = xi_matrix(T);
    CHECK(xi(0, 0) == 0.5);
    CHECK(xi(3, 3) == 3.5);
    const auto [a, ad] = ladder(T);
    CMatrix num = ad * a;
    num += 0.5 * CMatrix::identity(T.dim());
    CHECK(max_abs_diff(xi, num) < 1e-13);
    // [a, Ξ] = a on rows away from the top
    const CMatrix r = a * xi - xi * a - a;
    CHECK(r.block(0, 0, T.dim() - 2, T.dim()).max_abs() < 1e-12);
}

TEST_CASE("generators")
{
    const Lattice2D sq = square_lattice();
    const FockTruncation T = make_truncation(20, 4);
    CHECK(I_generator(0, 0, sq, T).is_zero());
    const CMatrix I10 = I_generator(1, 0, sq, T);
    const auto [a, ad] = ladder(T);
    const CMatrix expect = (cplx(0, -1) / std::sqrt(2.0)) * a + (cplx(0, 1) / std::sqrt(2.0)) * ad;
    CHECK(max_abs_diff(I10, expect) < 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> u(-4, 4);
    for (int t = 0; t < 20; ++t) CHECK(hermiticity_residual(I_generator(u(rng), u(rng), sq, T)) < 1e-14);

    CHECK(M_generator(0, 1, 0, zero_vector_potential(sq), sq, T).is_zero());
    CHECK_THROWS(M_generator(2, 1, 0, zero_vector_potential(sq), sq, T));
}

TEST_CASE("M generator at j=1 matches its normal-ordered form")
{
    const Lattice2D L = make_lattice({1.0, 0.2}, {0.1, 1.3});
    const auto A = one_mode_vector_potential(0.4, L);
    const FockTruncation T = make_truncation(24, 4);
    const cplx al = generator_coefficient(1, 0, L);
    const cplx g = A.g.coeff(1, 0), gb = A.g_bar.coeff(1, 0);
    const auto [a, ad] = ladder(T);
    // ½{αa + ᾱa†, g a + ḡ a†} = αg a² + ᾱḡ a†² + (αḡ + ᾱg)(a†a + ½)
    CMatrix closed = (al * g) * (a * a) + (std::conj(al) * gb) * (ad * ad);
    CMatrix num = ad * a;
    num += 0.5 * CMatrix::identity(T.dim());
    closed.add_scaled(al * gb + std::conj(al) * g, num);
    const CMatrix M1 = M_generator(1, 1, 0, A, L, T);
    const std::size_t r = T.reliable_dim();
    CHECK(max_abs_diff(M1.corner(r), closed.corner(r)) < 1e-12);
    const CMatrix M0 = M_generator(0, 1, 0, A, L, T);
    CHECK(max_abs_diff(M0, linear_ladder(g, gb, T)) < 1e-15);
}

TEST_CASE("displacement exponential")
{
    const Lattice2D sq = square_lattice();
    const FockTruncation T = make_truncation(80, 6);
    CHECK(max_abs_diff(displacement_exp(0.0, 1, 2, sq, T), CMatrix::identity(T.dim())) < 1e-12);
    CHECK(max_abs_diff(displacement_exp(1.3, 0, 0, sq, T), CMatrix::identity(T.dim())) < 1e-12);

    const double t = 1.1;
    const CMatrix D = displacement_exp(t, 1, 1, sq, T);
    const std::size_t r = 40;
    const CMatrix dd = D.adjoint() * D;
    CHECK(max_abs_diff(dd.corner(r), CMatrix::identity(r)) < 1e-10);

    // Oracle: Taylor series of exp(i t I) applied to the vacuum, summed to convergence.
    const CMatrix I = I_generator(1, 1, sq, T);
    std::vector<cplx> term(T.dim(), 0.0), sum(T.dim(), 0.0);
    term[0] = 1.0;
    sum[0] = 1.0;
    for (int k = 1; k < 120; ++k) {
        std::vector<cplx> next(T.dim(), 0.0);
        for (std::size_t i = 0; i < T.dim(); ++i)
            for (std::size_t j = 0; j < T.dim(); ++j) next[i] += I(i, j) * term[j];
        for (std::size_t i = 0; i < T.dim(); ++i) {
            term[i] = next[i] * cplx(0, t) / double(k);
            sum[i] += term[i];
        }
    }
    const double alpha2 = std::norm(generator_coefficient(1, 1, sq));
    CHECK(std::abs(sum[0] - std::exp(-t * t * alpha2 / 2)) < 1e-10);
    CHECK(std::abs(D(0, 0) - sum[0]) < 1e-10);
}

TEST_CASE("truncation stability and budget")
{
    const Lattice2D sq = square_lattice();
    const cplx d1 = displacement_exp(0.7, 1, 0, sq, make_truncation(40, 6))(2, 3);
    const cplx d2 = displacement_exp(0.7, 1, 0, sq, make_truncation(48, 6))(2, 3);
    CHECK(std::abs(d1 - d2) < 1e-8);
    CHECK_THROWS_AS(require_truncation_budget(make_truncation(10, 6), 4, 0), ResourceError);
    CHECK_NOTHROW(require_truncation_budget(make_truncation(14, 6), 4, 0));
    CHECK_THROWS(make_truncation(0, 0));
}
