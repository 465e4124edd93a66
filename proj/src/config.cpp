#include "magbloch/config.hpp"

#include "magbloch/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace magbloch {

using nlohmann::json;

OracleModel parse_oracle_model(const std::string& s)
{
    if (s == "constant") return OracleModel::constant;
    if (s == "second") return OracleModel::second_order;
    if (s == "full") return OracleModel::full;
    if (s == "two-band") return OracleModel::two_band;
    throw ConfigError("unknown oracle model '" + s + "' (expected constant, second, full, two-band)");
}

const char* oracle_model_name(OracleModel m)
{
    switch (m) {
    case OracleModel::constant: return "constant";
    case OracleModel::second_order: return "second";
    case OracleModel::full: return "full";
    case OracleModel::two_band: return "two-band";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw ConfigError(what);
}

Vec2 read_vec2(const json& j, const std::string& where)
{
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            where + " must be an array of two numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

FourierSeries2D read_series(const json& j, const std::string& where)
{
    require(j.is_array(), where + " must be an array of [n, m, re, im] entries");
    std::vector<std::pair<Mode, cplx>> modes;
    for (const auto& e : j) {
        require(e.is_array() && e.size() == 4, where + " entries must be [n, m, re, im]");
        require(e[0].is_number_integer() && e[1].is_number_integer(), where + " mode indices must be integers");
        require(e[2].is_number() && e[3].is_number(), where + " coefficients must be numbers");
        const int n = e[0].get<int>(), m = e[1].get<int>();
        require(std::abs(n) <= FourierSeries2D::default_cutoff && std::abs(m) <= FourierSeries2D::default_cutoff,
                where + " mode (" + std::to_string(n) + "," + std::to_string(m) + ") exceeds the cutoff " +
                    std::to_string(FourierSeries2D::default_cutoff));
        modes.push_back({{n, m}, cplx(e[2].get<double>(), e[3].get<double>())});
    }
    return FourierSeries2D::from_modes(modes, true);
}

template <class T>
T read_number(const json& j, const std::string& key)
{
    if constexpr (std::is_integral_v<T>)
        require(j.is_number_integer(), "'" + key + "' must be an integer");
    else
        require(j.is_number(), "'" + key + "' must be a number");
    return j.get<T>();
}

RationalFlux read_flux(const json& j, const std::string& where)
{
    require(j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer(),
            where + " must be [p, q] with integers");
    const long q = j[1].get<long>();
    require(q >= 1, where + " needs q >= 1");
    return make_flux(j[0].get<long>(), q);
}

} // namespace

void apply_config_json(const std::string& text, RunConfig& cfg)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require(root.is_object(), "config root must be a JSON object");
    static const std::set<std::string> known = {"lattice", "V", "A1", "A2", "qmax", "fluxes", "delta", "band",
                                                "iota", "convention", "grid", "tol_band", "order", "n_max",
                                                "guard", "moyal_weight", "oracle", "format", "units"};
    for (const auto& [key, value] : root.items()) {
        require(known.count(key), "unknown config key '" + key + "'");
        if (key == "lattice") {
            require(value.is_object(), "'lattice' must be an object with keys a, b");
            for (const auto& [k, v] : value.items()) require(k == "a" || k == "b", "unknown lattice key '" + k + "'");
            require(value.contains("a") && value.contains("b"), "'lattice' needs both a and b");
            cfg.lattice = make_lattice(read_vec2(value["a"], "lattice.a"), read_vec2(value["b"], "lattice.b"));
        } else if (key == "V") {
            cfg.V = read_series(value, "V");
        } else if (key == "A1") {
            cfg.A1 = read_series(value, "A1");
        } else if (key == "A2") {
            cfg.A2 = read_series(value, "A2");
        } else if (key == "qmax") {
            cfg.q_max = read_number<long>(value, key);
        } else if (key == "fluxes") {
            require(value.is_array(), "'fluxes' must be an array of [p, q]");
            cfg.fluxes.clear();
            for (const auto& f : value) cfg.fluxes.push_back(read_flux(f, "fluxes entry"));
        } else if (key == "delta") {
            require(value.is_array(), "'delta' must be an array of numbers");
            cfg.deltas.clear();
            for (const auto& d : value) cfg.deltas.push_back(read_number<double>(d, key));
        } else if (key == "band") {
            require(value.is_array(), "'band' must be an array of Landau indices");
            cfg.band.clear();
            for (const auto& b : value) cfg.band.push_back(read_number<int>(b, key));
        } else if (key == "iota") {
            cfg.iota = read_number<int>(value, key);
        } else if (key == "convention") {
            require(value.is_string(), "'convention' must be a string");
            cfg.convention = parse_convention(value.get<std::string>());
        } else if (key == "grid") {
            require(value.is_array() && value.size() == 2, "'grid' must be [n1, n2]");
            cfg.grid1 = read_number<int>(value[0], key);
            cfg.grid2 = read_number<int>(value[1], key);
        } else if (key == "tol_band") {
            cfg.tol_band = read_number<double>(value, key);
        } else if (key == "order") {
            cfg.order = read_number<int>(value, key);
        } else if (key == "n_max") {
            cfg.n_max = read_number<int>(value, key);
        } else if (key == "guard") {
            cfg.guard = read_number<int>(value, key);
        } else if (key == "moyal_weight") {
            cfg.moyal_weight = read_number<int>(value, key);
        } else if (key == "oracle") {
            require(value.is_object(), "'oracle' must be an object");
            for (const auto& [k, v] : value.items()) {
                if (k == "model") {
                    require(v.is_string(), "oracle.model must be a string");
                    cfg.oracle_model = parse_oracle_model(v.get<std::string>());
                } else if (k == "n_max") {
                    cfg.oracle_n_max = read_number<int>(v, "oracle.n_max");
                } else if (k == "twists") {
                    cfg.oracle_twists = read_number<int>(v, "oracle.twists");
                } else {
                    throw ConfigError("unknown oracle key '" + k + "'");
                }
            }
        } else if (key == "format") {
            require(value.is_string(), "'format' must be a string");
            const auto f = value.get<std::string>();
            require(f == "csv" || f == "json", "'format' must be csv or json");
            cfg.format = f == "csv" ? OutputFormat::csv : OutputFormat::json;
        } else if (key == "units") {
            require(value.is_string(), "'units' must be a string");
            const auto u = value.get<std::string>();
            require(u == "native" || u == "reduced", "'units' must be native or reduced");
            cfg.reduced_units = u == "reduced";
        }
    }
}

void load_config_file(const std::string& path, RunConfig& cfg)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    cfg.config_path = path;
    apply_config_json(ss.str(), cfg);
}

namespace {

std::vector<std::string> split_commas(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

std::vector<double> parse_double_list(const std::string& s)
{
    std::vector<double> out;
    for (const auto& tok : split_commas(s)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == tok.size() && std::isfinite(v), "'" + tok + "' is not a number");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    for (const auto& tok : split_commas(s)) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == tok.size(), "'" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<RationalFlux> parse_flux_list(const std::string& s)
{
    std::vector<RationalFlux> out;
    for (const auto& tok : split_commas(s)) {
        const auto slash = tok.find('/');
        require(slash != std::string::npos, "flux '" + tok + "' must be written p/q");
        const auto pq = parse_int_list(tok.substr(0, slash) + "," + tok.substr(slash + 1));
        require(pq.size() == 2 && pq[1] >= 1, "flux '" + tok + "' needs q >= 1");
        out.push_back(make_flux(pq[0], pq[1]));
    }
    return out;
}

void validate(const RunConfig& cfg)
{
    require(cfg.iota == 1 || cfg.iota == -1, "iota must be +1 or -1");
    require(cfg.q_max >= 1, "qmax must be at least 1");
    require(cfg.grid1 >= 8 && cfg.grid2 >= 8, "beta grid must be at least 8 x 8");
    require(cfg.threads >= 0, "threads must be non-negative");
    require(!cfg.band.empty(), "band set must not be empty");
    for (int b : cfg.band) require(b >= 0, "Landau indices must be non-negative");
    require(cfg.order >= 0, "order must be non-negative");
    require(cfg.n_max >= 1 && cfg.guard >= 0, "n_max must be positive and guard non-negative");
    require(cfg.oracle_n_max >= 1, "oracle n_max must be positive");
    require(cfg.oracle_twists >= 1, "oracle twists must be at least 1");
    require(cfg.moyal_weight == 1 || cfg.moyal_weight == 2, "moyal_weight must be 1 or 2");
    for (double d : cfg.deltas) require(d > 0.0, "delta values must be positive");
}

PeriodicVectorPotential vector_potential(const RunConfig& cfg)
{
    return make_vector_potential(cfg.A1, cfg.A2, cfg.lattice);
}

} // namespace magbloch
