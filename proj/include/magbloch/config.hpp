#pragma once

#include "magbloch/lattice.hpp"
#include "magbloch/quantize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace magbloch {

enum class OutputFormat { csv, json };

enum class OracleModel { constant, second_order, full, two_band };
OracleModel parse_oracle_model(const std::string& s);
const char* oracle_model_name(OracleModel m);

struct RunConfig {
    std::string command;
    std::string config_path;
    std::string out_path; // empty: stdout
    OutputFormat format = OutputFormat::csv;

    Lattice2D lattice = square_lattice();
    FourierSeries2D V = harper_potential();
    FourierSeries2D A1{true}, A2{true};

    long q_max = 10;
    std::vector<RationalFlux> fluxes; // empty: command default
    std::vector<double> deltas;       // strong-field commands: each must satisfy θ = 2πδ² for a listed flux
    std::vector<int> band{0};
    int iota = -1; // weak-field quantization sign; the strong-field stack uses +1
    Convention convention = Convention::hofstadter;
    int threads = 0;
    double tol_band = -1.0;
    int grid1 = 16, grid2 = 16;

    int order = 4;
    int n_max = 40;
    int guard = 6;
    int moyal_weight = 1;

    OracleModel oracle_model = OracleModel::full;
    int oracle_n_max = 30;
    int oracle_twists = 2;
    bool reduced_units = false; // (E - λ*)/δ²
};

// Parses the JSON config text into cfg; unknown keys and malformed entries raise ConfigError.
void apply_config_json(const std::string& text, RunConfig& cfg);
void load_config_file(const std::string& path, RunConfig& cfg);

// "0.2,0.1" -> {0.2, 0.1}
std::vector<double> parse_double_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
// "1/5,2/5" -> reduced fluxes
std::vector<RationalFlux> parse_flux_list(const std::string& s);

// Checks cross-field invariants before any computation.
void validate(const RunConfig& cfg);

PeriodicVectorPotential vector_potential(const RunConfig& cfg);

} // namespace magbloch
