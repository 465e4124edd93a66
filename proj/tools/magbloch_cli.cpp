#include "magbloch/commands.hpp"
#include "magbloch/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace magbloch;

int main(int argc, char** argv)
{
    CLI::App app{"magbloch: effective models for a Bloch electron in a magnetic field"};
    app.require_subcommand(1);

    std::string config, out, format, delta, band, fluxes, convention, model, units;
    long qmax = -1;
    int iota = 0, threads = -1, order = -1, n_max = -1, oracle_n_max = -1, twists = -1;
    double tol_band = -2.0;

    const char* names[] = {"butterfly", "effective", "two-band", "sapt", "oracle-compare"};
    const char* help[] = {"band edges over all reduced p/q with q <= qmax",
                          "single-band strong-field model spectra",
                          "two-band model spectra and GG† reduction check",
                          "SAPT recursion diagnostics and effective symbols",
                          "oracle vs effective model order fit"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config", config, "JSON config file");
        sub->add_option("--out", out, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--qmax", qmax, "largest denominator");
        sub->add_option("--delta", delta, "comma-separated δ list");
        sub->add_option("--flux", fluxes, "comma-separated p/q list");
        sub->add_option("--band", band, "Landau index or indices, comma-separated");
        sub->add_option("--iota", iota, "sign of the commutation phase, +1 or -1");
        sub->add_option("--threads", threads, "worker threads (0 = hardware)");
        sub->add_option("--tol-band", tol_band, "band merge tolerance");
        sub->add_option("--convention", convention, "hofstadter or harper");
        sub->add_option("--order", order, "SAPT order");
        sub->add_option("--n-max", n_max, "Fock truncation for SAPT");
        sub->add_option("--model", model, "oracle-compare model: constant, second, full, two-band");
        sub->add_option("--oracle-n-max", oracle_n_max, "Fock truncation for the oracle");
        sub->add_option("--twists", twists, "Bloch twists per direction for the oracle");
        sub->add_option("--units", units, "native or reduced ((E - λ*)/δ²)")
            ->check(CLI::IsMember({"native", "reduced"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    RunConfig cfg;
    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
    try {
        if (!config.empty()) load_config_file(config, cfg);
        if (!out.empty()) cfg.out_path = out;
        if (!format.empty()) cfg.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
        if (qmax != -1) cfg.q_max = qmax;
        if (!delta.empty()) cfg.deltas = parse_double_list(delta);
        if (!fluxes.empty()) cfg.fluxes = parse_flux_list(fluxes);
        if (!band.empty()) cfg.band = parse_int_list(band);
        if (iota != 0) cfg.iota = iota;
        if (threads != -1) cfg.threads = threads;
        if (tol_band != -2.0) cfg.tol_band = tol_band;
        if (!convention.empty()) cfg.convention = parse_convention(convention);
        if (order != -1) cfg.order = order;
        if (n_max != -1) cfg.n_max = n_max;
        if (!model.empty()) cfg.oracle_model = parse_oracle_model(model);
        if (oracle_n_max != -1) cfg.oracle_n_max = oracle_n_max;
        if (twists != -1) cfg.oracle_twists = twists;
        if (!units.empty()) cfg.reduced_units = units == "reduced";
    } catch (const std::exception& e) {
        std::cerr << "magbloch " << cfg.command << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
    return run_command(cfg, std::cerr);
}
