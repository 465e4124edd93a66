#include "magbloch/oracle.hpp"

#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace magbloch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int modes_of(const FourierSeries2D& V, const PeriodicVectorPotential& A)
{
    return std::max({1, V.max_mode_index(), A.f1.max_mode_index(), A.f2.max_mode_index()});
}

OracleBasis basis_for(const OracleSetup& s, const RationalFlux& flux, int n_modes)
{
    int n_grid = static_cast<int>(flux.q) * std::max(1, s.grid_multiple);
    while (n_grid < 4 * n_modes) n_grid += static_cast<int>(flux.q);
    return make_oracle_basis(s.n_cells, n_grid, s.fock, n_modes);
}

} // namespace

OracleBasis make_oracle_basis(int n_cells, int n_grid, const FockTruncation& fock, int n_modes, double memory_budget)
{
    if (n_cells < 1 || n_grid < 1) throw ConfigError("oracle grid sizes must be positive");
    if (n_grid < 4 * n_modes) {
        std::ostringstream os;
        os << "oracle grid: N_grid=" << n_grid << " must be >= 4*N_modes=" << 4 * n_modes;
        throw ConfigError(os.str());
    }
    OracleBasis b{n_cells, n_grid, fock};
    const double bytes = 16.0 * double(b.dim()) * double(b.dim());
    if (bytes > memory_budget) {
        std::ostringstream os;
        os << "oracle memory budget: dimension " << b.dim() << " needs " << bytes << " bytes > " << memory_budget;
        throw ResourceError(os.str());
    }
    return b;
}

RotationPair oracle_rotation_pair(const OracleBasis& basis, double theta, int iota, double beta1, double beta2)
{
    if (iota != 1) throw ConfigError("the strong-field oracle is fixed at iota = +1");
    const double shift = theta * basis.n_grid;
    const long s = std::lround(shift);
    if (std::abs(shift - double(s)) > 1e-9) {
        std::ostringstream os;
        os << "incommensurate flux: theta*N_grid = " << shift << " is not an integer";
        throw ConfigError(os.str());
    }
    const std::size_t n = basis.slow_dim();
    std::vector<cplx> u(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long r = static_cast<long>(j % static_cast<std::size_t>(basis.n_grid));
        u[j] = std::exp(cplx(0.0, -(beta1 + two_pi * double(r) / double(basis.n_grid))));
    }
    RotationPair rp;
    rp.U = WeylMonomial::diagonal(std::move(u));
    rp.V = WeylMonomial::cyclic_shift(n, iota * s, std::exp(cplx(0.0, -beta2)));
    rp.theta = theta;
    rp.iota = iota;
    return rp;
}

CMatrix build_full_matrix(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                          const OracleBasis& basis, double delta, int iota, double beta1, double beta2)
{
    if (delta < 0.0) throw ConfigError("delta must be non-negative");
    const int n_modes = modes_of(V, A);
    if (basis.n_grid < 4 * n_modes) throw ConfigError("oracle grid does not resolve the potential modes");
    const double theta = two_pi * delta * delta;
    const RotationPair rep = oracle_rotation_pair(basis, theta, iota, beta1, beta2);
    const ExactSymbol fast(V, A, L, basis.fock, delta);
    const std::size_t ns = basis.slow_dim();
    CMatrix h(basis.dim(), basis.dim());
    kron_accumulate(1.0, CMatrix::identity(ns), xi_matrix(basis.fock), h);
    for (const auto& [k, m] : fast.modes())
        kron_accumulate(1.0, rep.monomial(k.first, k.second, Convention::harper).to_matrix(), m, h);
    const double res = hermiticity_residual(h);
    if (res > 1e-10) {
        std::ostringstream os;
        os << "oracle matrix Hermiticity residual " << res << " exceeds 1e-10";
        throw NumericError(os.str());
    }
    return h;
}

std::vector<double> band_cluster(const std::vector<double>& eigs, double lambda_star, ClusterOptions opt)
{
    const double half_gap = 0.5 * (1.0 - opt.margin);
    std::vector<double> c;
    for (double e : eigs)
        if (std::abs(e - lambda_star) < 0.5) c.push_back(e);
    std::sort(c.begin(), c.end());
    const bool spread = !c.empty() && std::max(lambda_star - c.front(), c.back() - lambda_star) >= half_gap;
    const bool count = opt.expected_count >= 0 && static_cast<long>(c.size()) != opt.expected_count;
    if (spread || count) {
        std::ostringstream os;
        os << "gap closed at this delta: cluster around " << lambda_star << " has " << c.size() << " eigenvalues";
        if (!c.empty()) os << " spanning [" << c.front() << ", " << c.back() << "]";
        os << ", outside half gap " << half_gap;
        throw NumericError(os.str());
    }
    return c;
}

OrderFitReport order_fit(const std::vector<std::vector<double>>& model, const std::vector<std::vector<double>>& oracle,
                         const std::vector<double>& deltas, double floor)
{
    if (deltas.size() < 3) throw ConfigError("order fit needs at least 3 delta values");
    if (model.size() != deltas.size() || oracle.size() != deltas.size())
        throw ConfigError("order fit lists must match the delta list");
    OrderFitReport r;
    r.delta = deltas;
    for (std::size_t i = 0; i < deltas.size(); ++i) r.distance.push_back(sorted_list_distance(model[i], oracle[i]));
    r.fit = fit_loglog_slope(r.delta, r.distance, floor);
    return r;
}

std::vector<RationalFlux> default_oracle_fluxes() { return {{2, 5}, {1, 5}, {1, 10}, {1, 20}}; }

std::vector<std::pair<double, double>> twist_points(const OracleSetup& s, const RationalFlux& flux)
{
    const int t = std::max(1, s.twists);
    std::vector<std::pair<double, double>> pts;
    const double span = std::numbers::pi / double(flux.q);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            pts.emplace_back(t == 1 ? 0.0 : span * i / (t - 1), t == 1 ? 0.0 : span * j / (t - 1));
    return pts;
}

namespace {

template <class Oracle, class Model>
OracleRun run_twisted(const OracleSetup& setup, const RationalFlux& flux, double delta, Oracle oracle, Model model)
{
    const auto pts = twist_points(setup, flux);
    std::vector<std::vector<double>> ob(pts.size()), mb(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        ob[i] = oracle(pts[i].first, pts[i].second);
        mb[i] = model(pts[i].first, pts[i].second);
    });
    OracleRun run{flux, delta, {}, {}, 0.0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        run.distance = std::max(run.distance, sorted_list_distance(ob[i], mb[i]));
        run.oracle_band.insert(run.oracle_band.end(), ob[i].begin(), ob[i].end());
        run.model_band.insert(run.model_band.end(), mb[i].begin(), mb[i].end());
    }
    std::sort(run.oracle_band.begin(), run.oracle_band.end());
    std::sort(run.model_band.begin(), run.model_band.end());
    return run;
}

} // namespace

OracleRun oracle_single_band(const FourierSeries2D& V, const Lattice2D& L, int n_star, const RationalFlux& flux_in,
                             SingleBandTerms terms, bool constant_only, const OracleSetup& setup)
{
    const RationalFlux flux = make_flux(flux_in.p, flux_in.q);
    const double delta = delta_from_flux(flux);
    const auto A = zero_vector_potential(L);
    const OracleBasis basis = basis_for(setup, flux, modes_of(V, A));
    const double lambda = double(n_star) + 0.5;
    FourierSeries2D sym = FourierSeries2D::constant(lambda);
    if (!constant_only) sym = single_band_model(V, L, lambda, flux, terms, delta).blocks(0, 0);
    const long n = static_cast<long>(basis.slow_dim());
    return run_twisted(
        setup, flux, delta,
        [&](double b1, double b2) {
            return band_cluster(eigvalsh(build_full_matrix(V, A, L, basis, delta, 1, b1, b2)), lambda, {0.1, n});
        },
        [&](double b1, double b2) {
            return eigvalsh(quantize_operator(sym, oracle_rotation_pair(basis, flux.theta(), 1, b1, b2),
                                              Convention::harper));
        });
}

OracleRun oracle_two_band(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L, int n_star,
                          const RationalFlux& flux_in, const OracleSetup& setup)
{
    const RationalFlux flux = make_flux(flux_in.p, flux_in.q);
    const double delta = delta_from_flux(flux);
    const OracleBasis basis = basis_for(setup, flux, modes_of(V, A));
    const EffectiveModel model = two_band_model(A, L, n_star, flux, delta);
    const long n = static_cast<long>(basis.slow_dim());
    return run_twisted(
        setup, flux, delta,
        [&](double b1, double b2) {
            const auto eigs = eigvalsh(build_full_matrix(V, A, L, basis, delta, 1, b1, b2));
            auto lo = band_cluster(eigs, double(n_star) + 0.5, {0.1, n});
            const auto hi = band_cluster(eigs, double(n_star) + 1.5, {0.1, n});
            lo.insert(lo.end(), hi.begin(), hi.end());
            return lo;
        },
        [&](double b1, double b2) {
            return eigvalsh(quantize_blocks(model.blocks, oracle_rotation_pair(basis, flux.theta(), 1, b1, b2)));
        });
}

} // namespace magbloch
