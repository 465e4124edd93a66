#include "magbloch/symbols.hpp"

#include "magbloch/errors.hpp"
#include "magbloch/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace magbloch {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

cplx taylor_coefficient(int k)
{
    cplx c = 1.0;
    for (int i = 1; i <= k; ++i) c *= cplx(0.0, two_pi) / double(i);
    return c;
}

cplx mode_phase(const Mode& k, double p_s, double x_s)
{
    return std::exp(cplx(0.0, two_pi * (k.first * p_s + k.second * x_s)));
}

void check_band(const std::vector<int>& band, const FockTruncation& T)
{
    if (band.empty()) throw ConfigError("empty band set");
    for (int b : band)
        if (b < 0 || static_cast<std::size_t>(b) >= T.reliable_dim())
            throw ConfigError("band index outside the guard corner");
}

// Plain Taylor-truncated symbol plus exact one, differenced on the fly.
struct RemainderContext {
    OperatorSymbol truncated;
    ExactSymbol exact;
};

double remainder_from(const RemainderContext& ctx, double delta, double p_s, double x_s,
                      const std::optional<std::vector<int>>& band)
{
    const auto& T = ctx.truncated.truncation;
    CMatrix r = ctx.exact.at(p_s, x_s) - eval_symbol(ctx.truncated, delta, p_s, x_s).matrix;
    const std::size_t c = T.reliable_dim();
    if (band) {
        CMatrix cols(c, band->size());
        for (std::size_t j = 0; j < band->size(); ++j)
            for (std::size_t i = 0; i < c; ++i) cols(i, j) = r(i, static_cast<std::size_t>((*band)[j]));
        return spectral_norm(cols);
    }
    CMatrix w = r.corner(c);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) w(i, j) /= double(j) + 0.5;
    return spectral_norm(w);
}

} // namespace

const ModeMatrixMap& OperatorSymbol::grade(int j) const
{
    static const ModeMatrixMap empty;
    auto it = grading.find(j);
    return it == grading.end() ? empty : it->second;
}

void OperatorSymbol::accumulate(int j, const Mode& k, const CMatrix& m)
{
    auto& g = grading[j];
    auto it = g.find(k);
    if (it == g.end())
        g.emplace(k, m);
    else
        it->second += m;
}

CMatrix eval_modes(const ModeMatrixMap& modes, double p_s, double x_s, std::size_t dim)
{
    CMatrix r(dim, dim);
    for (const auto& [k, m] : modes) r.add_scaled(mode_phase(k, p_s, x_s), m);
    return r;
}

EvaluatedSymbol eval_symbol(const OperatorSymbol& s, double delta, double p_s, double x_s)
{
    const std::size_t d = s.truncation.dim();
    EvaluatedSymbol e{p_s, x_s, CMatrix(d, d)};
    for (const auto& [j, modes] : s.grading) e.matrix.add_scaled(std::pow(delta, j), eval_modes(modes, p_s, x_s, d));
    return e;
}

EvaluatedSymbol eval_grade(const OperatorSymbol& s, int j, double p_s, double x_s)
{
    return {p_s, x_s, eval_modes(s.grade(j), p_s, x_s, s.truncation.dim())};
}

double symbol_hermiticity_residual(const ModeMatrixMap& modes)
{
    double r = 0.0;
    for (const auto& [k, m] : modes) {
        auto it = modes.find({-k.first, -k.second});
        if (it == modes.end())
            r = std::max(r, m.max_abs());
        else
            r = std::max(r, max_abs_diff(m, it->second.adjoint()));
    }
    return r;
}

double symbol_hermiticity_residual(const OperatorSymbol& s)
{
    double r = 0.0;
    for (const auto& [j, modes] : s.grading) r = std::max(r, symbol_hermiticity_residual(modes));
    return r;
}

ModeMatrixMap V_term(int j, const FourierSeries2D& V, const Lattice2D& L, const FockTruncation& T)
{
    if (j < 2) throw ConfigError("V_term needs j >= 2");
    const cplx c = taylor_coefficient(j - 2);
    ModeMatrixMap out;
    for (const auto& [k, v] : V.coeffs()) {
        CMatrix m = power(I_generator(k.first, k.second, L, T), j - 2);
        m *= c * v;
        if (!m.is_zero()) out.emplace(k, std::move(m));
    }
    return out;
}

ModeMatrixMap W_term(int j, const PeriodicVectorPotential& A, const Lattice2D& L, const FockTruncation& T)
{
    if (j < 1) throw ConfigError("W_term needs j >= 1");
    const cplx c = taylor_coefficient(j - 1);
    std::map<Mode, int> modes;
    for (const auto& [k, g] : A.g.coeffs()) modes[k] = 1;
    for (const auto& [k, g] : A.g_bar.coeffs()) modes[k] = 1;
    ModeMatrixMap out;
    for (const auto& [k, unused] : modes) {
        const CMatrix x = linear_ladder(A.g.coeff(k.first, k.second), A.g_bar.coeff(k.first, k.second), T);
        CMatrix m = j == 1 ? x : jordan(power(I_generator(k.first, k.second, L, T), j - 1), x);
        m *= c;
        if (!m.is_zero()) out.emplace(k, std::move(m));
    }
    return out;
}

int natural_index(const PeriodicVectorPotential& A) { return A.is_zero() ? 1 : 0; }

OperatorSymbol assemble_truncated(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                                  const FockTruncation& T)
{
    OperatorSymbol s;
    s.truncation = T;
    s.lattice = L;
    s.grading[0][{0, 0}] = xi_matrix(T);
    const int top = 2 * (1 + natural_index(A));
    for (int j = 1; j <= top; ++j) {
        if (!A.is_zero())
            for (auto& [k, m] : W_term(j, A, L, T)) s.accumulate(j, k, m);
        if (j >= 2)
            for (auto& [k, m] : V_term(j, V, L, T)) s.accumulate(j, k, m);
    }
    for (auto it = s.grading.begin(); it != s.grading.end();)
        it = it->second.empty() ? s.grading.erase(it) : std::next(it);
    return s;
}

ExactSymbol::ExactSymbol(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                         const FockTruncation& T, double delta)
    : T_(T)
{
    if (!(delta >= 0.0)) throw ConfigError("eval_exact needs delta >= 0");
    std::map<Mode, CMatrix> disp;
    auto E = [&](const Mode& k) -> const CMatrix& {
        auto it = disp.find(k);
        if (it == disp.end())
            it = disp.emplace(k, displacement_exp(two_pi * delta, k.first, k.second, L, T)).first;
        return it->second;
    };
    auto acc = [&](const Mode& k, CMatrix m) {
        auto it = modes_.find(k);
        if (it == modes_.end())
            modes_.emplace(k, std::move(m));
        else
            it->second += m;
    };
    if (delta == 0.0) return;
    std::map<Mode, int> amodes;
    for (const auto& [k, g] : A.g.coeffs()) amodes[k] = 1;
    for (const auto& [k, g] : A.g_bar.coeffs()) amodes[k] = 1;
    for (const auto& [k, unused] : amodes) {
        const CMatrix x = linear_ladder(A.g.coeff(k.first, k.second), A.g_bar.coeff(k.first, k.second), T);
        acc(k, delta * jordan(E(k), x));
    }
    for (const auto& [k, v] : V.coeffs()) acc(k, (delta * delta * v) * E(k));
}

CMatrix ExactSymbol::at(double p_s, double x_s) const
{
    CMatrix r = eval_modes(modes_, p_s, x_s, T_.dim());
    r += xi_matrix(T_);
    return r;
}

EvaluatedSymbol eval_exact(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                           const FockTruncation& T, double delta, double p_s, double x_s)
{
    return {p_s, x_s, ExactSymbol(V, A, L, T, delta).at(p_s, x_s)};
}

double remainder_norm(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                      const FockTruncation& T, double delta, double p_s, double x_s,
                      const std::optional<std::vector<int>>& band)
{
    if (delta == 0.0) return 0.0;
    if (band) check_band(*band, T);
    RemainderContext ctx{assemble_truncated(V, A, L, T), ExactSymbol(V, A, L, T, delta)};
    return remainder_from(ctx, delta, p_s, x_s, band);
}

double remainder_sup(const FourierSeries2D& V, const PeriodicVectorPotential& A, const Lattice2D& L,
                     const FockTruncation& T, double delta, const std::optional<std::vector<int>>& band, int grid)
{
    if (delta == 0.0) return 0.0;
    if (grid < 1) throw ConfigError("remainder grid must be positive");
    if (band) check_band(*band, T);
    RemainderContext ctx{assemble_truncated(V, A, L, T), ExactSymbol(V, A, L, T, delta)};
    std::vector<double> vals(static_cast<std::size_t>(grid * grid));
    parallel_for(vals.size(), [&](std::size_t idx) {
        const double p = double(idx / grid) / grid, x = double(idx % grid) / grid;
        vals[idx] = remainder_from(ctx, delta, p, x, band);
    });
    return *std::max_element(vals.begin(), vals.end());
}

} // namespace magbloch
