#include "magbloch/canonical_map.hpp"
#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/moyal.hpp"
#include "magbloch/oracle.hpp"
#include "magbloch/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace magbloch;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit; // seconds, <= 0 for none
    std::function<Outcome()> body;
};

std::string joined(const std::ostringstream& os)
{
    std::string s = os.str();
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "; ") == 0) s.resize(s.size() - 2);
    return s;
}

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Outcome landau_levels()
{
    const Lattice2D L = square_lattice();
    const OracleBasis b = make_oracle_basis(1, 4, make_truncation(40, 6), 1);
    const auto e = eigvalsh(build_full_matrix(FourierSeries2D(true), zero_vector_potential(L), L, b,
                                                  delta_from_flux(make_flux(1, 4))));
    double dev = 0.0;
    for (int n = 0; n <= 10; ++n)
        for (double x : band_cluster(e, n + 0.5, {0.1, long(b.slow_dim())})) dev = std::max(dev, std::abs(x - n - 0.5));
    return {dev < 1e-8, "max deviation " + fmt("%.3e", dev)};
}

Outcome sapt_closed_forms()
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    const FockTruncation T = make_truncation(40, 6);
    bool ok = true;
    std::ostringstream os;
    for (int n : {0, 1}) {
        const SaptResult r = run_sapt(assemble_truncated(V, zero_vector_potential(L), L, T), {n}, 4);
        const auto& h = r.effective.h;
        const double lambda = n + 0.5;
        const double h1 = h[1].max_abs(), h3 = h[3].max_abs();
        const double h2 = max_coeff_diff(h[2].blocks[0], V);
        const double h4 = max_coeff_diff(h[4].blocks[0], laplacian_DzDzbar(V, L).scaled(0.5 * lambda));
        ok = ok && h1 < 1e-12 && h3 < 1e-12 && h2 < 1e-10 && h4 < 1e-10;
        os << "band " << n << ": |h1| " << fmt("%.1e", h1) << " |h3| " << fmt("%.1e", h3) << " |h2-V| "
           << fmt("%.1e", h2) << " |h4-lap| " << fmt("%.1e", h4) << "; ";
    }
    return {ok, joined(os)};
}

Outcome error_orders()
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    const OracleSetup setup;
    const auto fluxes = default_oracle_fluxes();
    struct Model {
        const char* label;
        SingleBandTerms terms;
        bool constant;
        double lo, hi;
    };
    const Model models[] = {{"lambda", {}, true, 1.5, 2.5},
                            {"lambda+d2V", {true, false}, false, 3.5, 4.5},
                            {"full", {true, true}, false, 4.5, 5.7}};
    bool ok = true;
    std::ostringstream os;
    for (const auto& m : models) {
        std::vector<double> ds, dist;
        for (const auto& f : fluxes) {
            const OracleRun r = oracle_single_band(V, L, 0, f, m.terms, m.constant, setup);
            ds.push_back(r.delta);
            dist.push_back(r.distance);
        }
        const double s = fit_loglog_slope(ds, dist).slope;
        const bool pass = s >= m.lo && s <= m.hi;
        ok = ok && pass;
        os << m.label << " slope " << fmt("%.3f", s) << " in [" << m.lo << "," << m.hi << "] "
           << (pass ? "ok" : "no") << "; ";
    }
    return {ok, joined(os)};
}

Outcome remainder_orders()
{
    const Lattice2D L = square_lattice();
    const auto V = harper_potential();
    const FockTruncation T = make_truncation(120, 6);
    const std::vector<double> ds{0.2, 0.1, 0.05};
    struct Case {
        const char* label;
        PeriodicVectorPotential A;
        std::optional<std::vector<int>> band;
        double target;
    };
    const std::vector<Case> cases{{"A=0 unprojected", zero_vector_potential(L), std::nullopt, 4.0},
                                  {"A=0 projected", zero_vector_potential(L), std::vector<int>{0}, 5.0},
                                  {"A!=0 unprojected", one_mode_vector_potential(1.0, L), std::nullopt, 2.0},
                                  {"A!=0 projected", one_mode_vector_potential(1.0, L), std::vector<int>{0}, 3.0}};
    std::vector<double> slopes(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        std::vector<double> r;
        for (double d : ds) r.push_back(remainder_sup(V, cases[i].A, L, T, d, cases[i].band, 4));
        slopes[i] = fit_loglog_slope(ds, r).slope;
    });
    bool ok = true;
    std::ostringstream os;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const bool pass = std::abs(slopes[i] - cases[i].target) <= 0.5;
        ok = ok && pass;
        os << cases[i].label << " " << fmt("%.3f", slopes[i]) << " (" << cases[i].target << ") " << (pass ? "ok" : "no")
           << "; ";
    }
    return {ok, joined(os)};
}

Outcome two_band_reduction()
{
    const Lattice2D L = square_lattice();
    const auto A = one_mode_vector_potential(0.6, L);
    double disc = 0.0;
    for (long q : {2L, 3L, 5L}) {
        const RationalFlux f = make_flux(1, q);
        const EffectiveModel m = two_band_model(A, L, 1, f);
        const double period = m.family.beta_period();
        for (double b1 : beta_grid(period, 8))
            for (double b2 : beta_grid(period, 8))
                disc = std::max(disc, sorted_list_distance(eigvalsh(m.family.matrix_at(b1, b2)),
                                                           two_band_eigs_via_GGdag(A, 1, f, b1, b2)));
    }
    std::vector<double> ds, dist;
    for (const auto& f : default_oracle_fluxes()) {
        const OracleRun r = oracle_two_band(FourierSeries2D(true), A, L, 0, f);
        ds.push_back(r.delta);
        dist.push_back(r.distance);
    }
    const double slope = fit_loglog_slope(ds, dist).slope;
    const bool ok = disc < 1e-10 && slope >= 2.0;
    return {ok, "GGdag discrepancy " + fmt("%.2e", disc) + " (< 1e-10), oracle slope " + fmt("%.3f", slope) +
                    " (>= 2)"};
}

Outcome rotation_algebra()
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> uq(1, 60);
    std::uniform_real_distribution<double> ub(0.0, 2 * pi);
    double comm = 0.0, trans = 0.0;
    const auto V = harper_potential();
    for (int t = 0; t < 50; ++t) {
        const long q = uq(rng);
        long p = std::uniform_int_distribution<long>(0, q - 1)(rng);
        while (std::gcd(p, q) != 1) p = (p + 1) % q;
        const RationalFlux f = make_flux(p, q);
        const int iota = t % 2 ? 1 : -1;
        const double b1 = ub(rng), b2 = ub(rng);
        const auto [U, W] = clock_shift(f, iota, b1, b2);
        comm = std::max(comm, max_abs_diff(U * W, std::exp(cplx(0, -2 * pi * iota * f.theta())) * (W * U)));
        const auto fam = quantize_series(V, f, iota, t % 3 ? Convention::hofstadter : Convention::harper);
        trans = std::max(trans, sorted_list_distance(eigvalsh(fam.matrix_at(b1, b2)),
                                                     eigvalsh(fam.matrix_at(b1 + 2 * pi / double(q), b2))));
    }
    return {comm < 1e-12 && trans < 1e-10,
            "commutation " + fmt("%.2e", comm) + ", translation invariance " + fmt("%.2e", trans)};
}

Outcome almost_mathieu()
{
    double worst = 0.0;
    for (const auto& f : {make_flux(1, 2), make_flux(1, 3), make_flux(2, 5)}) {
        const auto harper = spectrum(quantize_series(harper_potential(), f, -1, Convention::harper), 32, 32);
        const auto am = almost_mathieu_bands(f, 64, int(f.q) * 16);
        worst = std::max(worst, hausdorff_interval_sets(harper.bands, am));
    }
    return {worst < 1e-3, "max Hausdorff distance " + fmt("%.2e", worst)};
}

Outcome zero_flux()
{
    const auto V = harper_potential();
    const auto fam = quantize_series(V, make_flux(0, 1), -1, Convention::hofstadter);
    const auto r = spectrum(fam, 16, 16);
    double lo = INFINITY, hi = -INFINITY;
    for (double b1 : beta_grid(fam.beta_period(), 16))
        for (double b2 : beta_grid(fam.beta_period(), 16)) {
            const double e = eval_series(V, b1 / (2 * pi), b2 / (2 * pi)).real();
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    const bool one = r.bands.size() == 1;
    const double range = one ? std::max(std::abs(r.bands[0].lo - lo), std::abs(r.bands[0].hi - hi)) : INFINITY;
    const double harper = one ? std::max(std::abs(r.bands[0].lo + 4), std::abs(r.bands[0].hi - 4)) : INFINITY;
    return {one && range < 1e-12 && harper < 1e-6,
            "bands " + std::to_string(r.bands.size()) + ", vs sampled range " + fmt("%.2e", range) + ", vs [-4,4] " +
                fmt("%.2e", harper)};
}

Outcome ccr_tables()
{
    bool ok = true;
    const Vec2T<Rational> a{Rational(1), Rational(0)}, b{Rational(1, 2), Rational(3, 4)};
    for (int iota : {1, -1})
        for (Rational delta : {Rational(1, 5), Rational(3, 7)}) {
            const auto t = ccr_table(paper_choice_map(a, b, delta, iota));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Rational expect(0);
                    if (i == 0 && j == 1) expect = Rational(iota);
                    if (i == 1 && j == 0) expect = Rational(-iota);
                    if (i == 2 && j == 3) expect = Rational(iota) * delta * delta;
                    if (i == 3 && j == 2) expect = -Rational(iota) * delta * delta;
                    ok = ok && t[i][j] == expect;
                }
        }
    const auto t = ccr_table(landau_choice_map());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational expect(0);
            if ((i == 0 && j == 1) || (i == 2 && j == 3)) expect = Rational(1);
            if ((i == 1 && j == 0) || (i == 3 && j == 2)) expect = Rational(-1);
            ok = ok && t[i][j] == expect;
        }
    return {ok, "paper choice (2 iota x 2 delta) and Landau choice in exact rationals"};
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "Landau levels", 10, landau_levels},
        {2, "SAPT closed forms", 5, sapt_closed_forms},
        {3, "error-order reproduction", 600, error_orders},
        {4, "remainder orders", 120, remainder_orders},
        {5, "two-band reduction", 300, two_band_reduction},
        {6, "rotation-algebra exactness", 0, rotation_algebra},
        {7, "almost-Mathieu union", 60, almost_mathieu},
        {8, "zero-flux limit", 0, zero_flux},
        {9, "CCR table", 0, ccr_tables},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.time_limit <= 0 || sec < c.time_limit;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d (%s): %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    sec, in_time ? "" : " over time limit");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
