#include "magbloch/commands.hpp"

#include "magbloch/effective.hpp"
#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/moyal.hpp"
#include "magbloch/oracle.hpp"
#include "magbloch/parallel.hpp"
#include "magbloch/report_io.hpp"

#include <cmath>
#include <new>
#include <numbers>
#include <ostream>
#include <sstream>

namespace magbloch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int single_index(const RunConfig& cfg, const char* what)
{
    if (cfg.band.size() != 1)
        throw ConfigError(std::string(what) + " takes exactly one Landau index in --band");
    return cfg.band[0];
}

void write_series(JsonWriter& w, const FourierSeries2D& f)
{
    w.begin_array();
    for (const auto& [k, c] : f.coeffs())
        w.begin_array().value(k.first).value(k.second).value(c.real()).value(c.imag()).end_array();
    w.end_array();
}

std::vector<Interval> rescale(const std::vector<Interval>& v, double shift, double scale)
{
    std::vector<Interval> out;
    for (const auto& b : v) out.push_back({(b.lo - shift) / scale, (b.hi - shift) / scale});
    return out;
}

std::string spectrum_output(const RunConfig& cfg, const std::vector<SpectrumReport>& reports)
{
    return cfg.format == OutputFormat::csv ? butterfly_csv(reports) : spectrum_reports_json(reports);
}

} // namespace

RationalFlux flux_for_delta(double delta, long q_cap)
{
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    const double theta = two_pi * delta * delta;
    // Convergents of the continued fraction of θ.
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = theta;
    RationalFlux best = make_flux(std::lround(theta), 1);
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        const long p2 = static_cast<long>(a) * p1 + p0, q2 = static_cast<long>(a) * q1 + q0;
        if (q2 > q_cap) break;
        best = make_flux(p2, q2);
        if (std::abs(theta - best.theta()) <= 1e-12 * std::max(1.0, theta)) return best;
        p0 = p1, q0 = q1, p1 = p2, q1 = q2;
        const double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (std::abs(theta - best.theta()) <= 1e-12 * std::max(1.0, theta)) return best;
    std::ostringstream os;
    os.precision(17);
    os << "commensurability: 2*pi*delta^2 = " << theta << " for delta = " << delta
       << " is not a fraction with q <= " << q_cap << "; nearest is " << best.p << "/" << best.q
       << " (delta = " << delta_from_flux(best) << ")";
    throw ConfigError(os.str());
}

std::vector<RationalFlux> strong_field_fluxes(const RunConfig& cfg)
{
    std::vector<RationalFlux> out = cfg.fluxes;
    for (double d : cfg.deltas) out.push_back(flux_for_delta(d));
    if (out.empty()) out = default_oracle_fluxes();
    for (const auto& f : out)
        if (f.p <= 0) throw ConfigError("strong-field fluxes must be positive, got " + std::to_string(f.p) + "/" +
                                        std::to_string(f.q));
    return out;
}

std::string cmd_butterfly(const RunConfig& cfg)
{
    if (cfg.q_max > butterfly_q_cap)
        throw ResourceError("qmax " + std::to_string(cfg.q_max) + " exceeds the cap of " +
                            std::to_string(butterfly_q_cap));
    const auto reports = butterfly(cfg.V, cfg.q_max, cfg.iota, cfg.convention, cfg.grid1, cfg.grid2, cfg.tol_band);
    return spectrum_output(cfg, reports);
}

std::string cmd_effective(const RunConfig& cfg)
{
    const int n_star = single_index(cfg, "effective");
    const double lambda = double(n_star) + 0.5;
    const auto fluxes = strong_field_fluxes(cfg);
    std::vector<SpectrumReport> reports(fluxes.size());
    parallel_for(fluxes.size(), [&](std::size_t i) {
        const EffectiveModel m = single_band_model(cfg.V, cfg.lattice, lambda, fluxes[i]);
        reports[i] = spectrum(m.family, cfg.grid1, cfg.grid2, cfg.tol_band);
        if (cfg.reduced_units) {
            const double s = m.delta * m.delta;
            reports[i].bands = rescale(reports[i].bands, lambda, s);
            reports[i].raw_bands = rescale(reports[i].raw_bands, lambda, s);
        }
    });
    return spectrum_output(cfg, reports);
}

std::string cmd_two_band(const RunConfig& cfg)
{
    const int n_star = single_index(cfg, "two-band");
    const PeriodicVectorPotential A = vector_potential(cfg);
    if (A.is_zero()) throw ConfigError("two-band needs a nonzero periodic vector potential (A1/A2)");
    const auto fluxes = strong_field_fluxes(cfg);
    std::vector<SpectrumReport> reports(fluxes.size());
    std::vector<double> discrepancy(fluxes.size(), 0.0);
    parallel_for(fluxes.size(), [&](std::size_t i) {
        const EffectiveModel m = two_band_model(A, cfg.lattice, n_star, fluxes[i]);
        reports[i] = spectrum(m.family, cfg.grid1, cfg.grid2, cfg.tol_band);
        const double period = m.family.beta_period();
        for (double b1 : beta_grid(period, 4))
            for (double b2 : beta_grid(period, 4)) {
                const auto direct = eigvalsh(m.family.matrix_at(b1, b2));
                const auto reduced = two_band_eigs_via_GGdag(A, n_star, fluxes[i], b1, b2);
                discrepancy[i] = std::max(discrepancy[i], sorted_list_distance(direct, reduced));
            }
    });
    if (cfg.format == OutputFormat::csv) return butterfly_csv(reports);
    JsonWriter w;
    w.begin_object().key("n_star").value(n_star).key("reports").begin_array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        w.begin_object().key("delta").value(delta_from_flux(fluxes[i]));
        w.key("ggdag_discrepancy").value(discrepancy[i]).key("spectrum");
        write_spectrum_report(w, reports[i]);
        w.end_object();
    }
    w.end_array().end_object();
    return w.str();
}

std::string cmd_sapt(const RunConfig& cfg)
{
    const PeriodicVectorPotential A = vector_potential(cfg);
    const FockTruncation T = make_truncation(cfg.n_max, cfg.guard);
    int top = 0;
    for (int b : cfg.band) top = std::max(top, b);
    require_truncation_budget(T, cfg.order, top);
    const OperatorSymbol H = assemble_truncated(cfg.V, A, cfg.lattice, T);
    MoyalOptions opt;
    opt.weight = cfg.moyal_weight;
    const SaptResult r = run_sapt(H, cfg.band, cfg.order, opt);

    JsonWriter w;
    w.begin_object();
    w.key("band").begin_array();
    for (int b : cfg.band) w.value(b);
    w.end_array();
    w.key("order").value(cfg.order).key("n_max").value(cfg.n_max).key("guard").value(cfg.guard);
    w.key("moyal_weight").value(cfg.moyal_weight);
    w.key("residuals").begin_object();
    w.key("pi_idempotent").numbers(r.residuals.pi_idempotent);
    w.key("pi_hermitian").numbers(r.residuals.pi_hermitian);
    w.key("pi_commutes").numbers(r.residuals.pi_commutes);
    w.key("u_unitary").numbers(r.residuals.u_unitary);
    w.key("u_intertwines").numbers(r.residuals.u_intertwines);
    w.key("max").value(r.residuals.max());
    w.end_object();
    w.key("h").begin_array();
    for (std::size_t j = 0; j < r.effective.h.size(); ++j) {
        const BlockSymbol& h = r.effective.h[j];
        w.begin_object().key("grade").value(static_cast<long>(j)).key("norm").value(h.max_abs());
        w.key("size").value(static_cast<long>(h.size)).key("blocks").begin_array();
        for (const auto& b : h.blocks) write_series(w, b);
        w.end_array().end_object();
    }
    w.end_array();
    if (cfg.band.size() == 1 && A.is_zero() && r.effective.h.size() > 4) {
        const double lambda = double(cfg.band[0]) + 0.5;
        const auto& h = r.effective.h;
        w.key("closed_form").begin_object();
        w.key("h1_norm").value(h[1].max_abs());
        w.key("h3_norm").value(h[3].max_abs());
        w.key("h2_minus_V").value(max_coeff_diff(h[2].blocks[0], cfg.V));
        w.key("h4_minus_half_lambda_laplacian_V")
            .value(max_coeff_diff(h[4].blocks[0], laplacian_DzDzbar(cfg.V, cfg.lattice).scaled(0.5 * lambda)));
        w.end_object();
    }
    w.end_object();
    return w.str();
}

std::string cmd_oracle_compare(const RunConfig& cfg)
{
    const int n_star = single_index(cfg, "oracle-compare");
    const auto fluxes = strong_field_fluxes(cfg);
    OracleSetup setup;
    setup.fock = make_truncation(cfg.oracle_n_max, cfg.guard);
    setup.twists = cfg.oracle_twists;
    PeriodicVectorPotential A = zero_vector_potential(cfg.lattice);
    if (cfg.oracle_model == OracleModel::two_band) {
        A = vector_potential(cfg);
        if (A.is_zero()) throw ConfigError("oracle-compare two-band needs a nonzero vector potential (A1/A2)");
    }

    std::vector<OracleRun> runs;
    std::vector<double> deltas, dists, slopes;
    for (const auto& f : fluxes) {
        OracleRun run;
        switch (cfg.oracle_model) {
        case OracleModel::constant:
            run = oracle_single_band(cfg.V, cfg.lattice, n_star, f, {false, false}, true, setup);
            break;
        case OracleModel::second_order:
            run = oracle_single_band(cfg.V, cfg.lattice, n_star, f, {true, false}, false, setup);
            break;
        case OracleModel::full:
            run = oracle_single_band(cfg.V, cfg.lattice, n_star, f, {true, true}, false, setup);
            break;
        case OracleModel::two_band: run = oracle_two_band(cfg.V, A, cfg.lattice, n_star, f, setup); break;
        }
        deltas.push_back(run.delta);
        dists.push_back(run.distance);
        slopes.push_back(deltas.size() >= 2 ? fit_loglog_slope(deltas, dists).slope : std::nan(""));
        runs.push_back(std::move(run));
    }
    const SlopeFit fit = deltas.size() >= 2 ? fit_loglog_slope(deltas, dists) : SlopeFit{};

    if (cfg.format == OutputFormat::csv) {
        std::string out = "p,q,delta,hausdorff,slope_so_far\n";
        for (std::size_t i = 0; i < runs.size(); ++i)
            out += std::to_string(runs[i].flux.p) + ',' + std::to_string(runs[i].flux.q) + ',' +
                   format_number(runs[i].delta) + ',' + format_number(runs[i].distance) + ',' +
                   (std::isnan(slopes[i]) ? std::string() : format_number(slopes[i])) + '\n';
        return out;
    }
    JsonWriter w;
    w.begin_object().key("model").value(oracle_model_name(cfg.oracle_model)).key("n_star").value(n_star);
    w.key("oracle_n_max").value(cfg.oracle_n_max).key("twists").value(cfg.oracle_twists);
    w.key("runs").begin_array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        w.begin_object().key("p").value(runs[i].flux.p).key("q").value(runs[i].flux.q);
        w.key("delta").value(runs[i].delta);
        w.key("oracle_band").numbers(runs[i].oracle_band);
        w.key("model_band").numbers(runs[i].model_band);
        w.key("hausdorff").value(runs[i].distance);
        w.key("slope_so_far");
        if (std::isnan(slopes[i]))
            w.value(std::string("n/a"));
        else
            w.value(slopes[i]);
        w.end_object();
    }
    w.end_array();
    w.key("slope").value(fit.slope).key("fit_residual").value(fit.residual);
    w.key("points_used").value(fit.points_used);
    w.end_object();
    return w.str();
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const GeometryError*>(&e)) return 2;
    if (dynamic_cast<const ResourceError*>(&e) || dynamic_cast<const std::bad_alloc*>(&e)) return 4;
    return 3;
}

int run_command(const RunConfig& cfg, std::ostream& err)
{
    try {
        validate(cfg);
        set_thread_count(static_cast<unsigned>(cfg.threads));
        std::string out;
        if (cfg.command == "butterfly")
            out = cmd_butterfly(cfg);
        else if (cfg.command == "effective")
            out = cmd_effective(cfg);
        else if (cfg.command == "two-band")
            out = cmd_two_band(cfg);
        else if (cfg.command == "sapt")
            out = cmd_sapt(cfg);
        else if (cfg.command == "oracle-compare")
            out = cmd_oracle_compare(cfg);
        else
            throw ConfigError("unknown command '" + cfg.command + "'");
        write_output(cfg.out_path, out);
        return 0;
    } catch (const std::exception& e) {
        err << "magbloch " << cfg.command << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace magbloch
