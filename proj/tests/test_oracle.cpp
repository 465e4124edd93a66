#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace magbloch;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> oracle_eigs(const FourierSeries2D& V, const PeriodicVectorPotential& A, const RationalFlux& f,
                                int n_grid, int n_max, int n_cells = 1)
{
    const OracleBasis b = make_oracle_basis(n_cells, n_grid, make_truncation(n_max, 6), 1);
    return eigvalsh(build_full_matrix(V, A, square_lattice(), b, delta_from_flux(f)));
}

} // namespace

TEST_CASE("free oracle gives Landau levels with the slow degeneracy")
{
    const Lattice2D L = square_lattice();
    const RationalFlux f = make_flux(1, 5);
    const OracleBasis b = make_oracle_basis(2, 5, make_truncation(20, 6), 1);
    const CMatrix h = build_full_matrix(FourierSeries2D(true), zero_vector_potential(L), L, b, delta_from_flux(f));
    CHECK(hermiticity_residual(h) < 1e-12);
    const auto e = eigvalsh(h);
    for (int n = 0; n <= 10; ++n) {
        const auto c = band_cluster(e, n + 0.5, {0.1, long(b.slow_dim())});
        for (double x : c) CHECK(std::abs(x - (n + 0.5)) < 1e-12);
    }
}

TEST_CASE("rotation pair on the grid")
{
    const RationalFlux f = make_flux(1, 5);
    const OracleBasis b = make_oracle_basis(1, 10, make_truncation(10, 2), 1);
    const RotationPair rp = oracle_rotation_pair(b, f.theta(), 1, 0.3, 0.7);
    const CMatrix U = rp.U.to_matrix(), V = rp.V.to_matrix();
    CHECK(max_abs_diff(U * V, std::exp(cplx(0, -2 * pi * f.theta())) * (V * U)) < 1e-12);
    CHECK_THROWS_AS(oracle_rotation_pair(b, 0.123, 1), ConfigError);
    CHECK_THROWS_AS(oracle_rotation_pair(b, f.theta(), -1), ConfigError);
}

TEST_CASE("basis guards")
{
    CHECK_THROWS_AS(make_oracle_basis(1, 3, make_truncation(10, 2), 1), ConfigError);
    CHECK_THROWS_AS(make_oracle_basis(100, 100, make_truncation(100, 6), 1), ResourceError);
    CHECK(make_oracle_basis(2, 8, make_truncation(10, 2), 2).dim() == 2u * 8u * 11u);
}

TEST_CASE("oracle cluster is converged in the Fock and grid sizes")
{
    const auto V = harper_potential();
    const auto A = zero_vector_potential(square_lattice());
    const RationalFlux f = make_flux(1, 10);
    const long n = 10;
    const auto c30 = band_cluster(oracle_eigs(V, A, f, 10, 30), 0.5, {0.1, n});
    const auto c38 = band_cluster(oracle_eigs(V, A, f, 10, 38), 0.5, {0.1, n});
    CHECK(sorted_list_distance(c30, c38) < 1e-8);

    // Doubling the grid doubles the slow representation: the coarse cluster sits inside the fine one.
    const auto c20 = band_cluster(oracle_eigs(V, A, f, 20, 30), 0.5, {0.1, 2 * n});
    for (double x : c30) {
        double best = 1e9;
        for (double y : c20) best = std::min(best, std::abs(x - y));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("cluster width follows the single-band model")
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    OracleSetup s;
    s.twists = 2;
    const OracleRun run = oracle_single_band(V, L, 0, make_flux(1, 5), {true, true}, false, s);
    const double wo = run.oracle_band.back() - run.oracle_band.front();
    const double wm = run.model_band.back() - run.model_band.front();
    CHECK(std::abs(wo - wm) < 0.2 * wm);
}

TEST_CASE("gap closure is reported")
{
    const Lattice2D L = square_lattice();
    OracleSetup s;
    s.fock = make_truncation(16, 4);
    s.twists = 1;
    CHECK_THROWS_AS(oracle_single_band(harper_potential(3.0), L, 0, make_flux(5, 1), {}, true, s), NumericError);
    try {
        band_cluster({0.04, 0.5, 0.96}, 0.5);
        FAIL("expected gap closure");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("gap closed") != std::string::npos);
    }
    const auto c = band_cluster({0.4, 0.5, 0.6, 1.5}, 0.5, {0.1, 3});
    CHECK(c.size() == 3);
}

TEST_CASE("order fit on synthetic power laws")
{
    const std::vector<double> ds{0.2, 0.1, 0.05, 0.025};
    std::vector<std::vector<double>> model, oracle;
    for (double d : ds) {
        model.push_back({0.5, 1.5});
        oracle.push_back({0.5 + 3 * std::pow(d, 3), 1.5});
    }
    const OrderFitReport r = order_fit(model, oracle, ds);
    CHECK(r.fit.slope == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(r.fit.points_used == 4);
    CHECK_THROWS_AS(order_fit(model, oracle, {0.1, 0.2}), ConfigError);

    oracle.back() = model.back();
    const OrderFitReport censored = order_fit(model, oracle, ds);
    CHECK(censored.fit.points_used == 3);
}

TEST_CASE("full single-band model has the highest order")
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    OracleSetup s;
    s.fock = make_truncation(24, 6);
    std::vector<double> ds, d0, d2;
    for (const auto& f : {make_flux(1, 5), make_flux(1, 10), make_flux(1, 20)}) {
        const auto r0 = oracle_single_band(V, L, 0, f, {true, false}, false, s);
        const auto r2 = oracle_single_band(V, L, 0, f, {true, true}, false, s);
        ds.push_back(r0.delta);
        d0.push_back(r0.distance);
        d2.push_back(r2.distance);
    }
    CHECK(fit_loglog_slope(ds, d2).slope > fit_loglog_slope(ds, d0).slope + 1.0);
}
