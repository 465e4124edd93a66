#include "magbloch/moyal.hpp"

#include "magbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace magbloch {

namespace {

constexpr double pi2 = std::numbers::pi * std::numbers::pi;

void accumulate(ModeMatrixMap& out, const Mode& k, const CMatrix& m, cplx s = 1.0)
{
    auto it = out.find(k);
    if (it == out.end())
        out.emplace(k, s * m);
    else
        it->second.add_scaled(s, m);
}

// Coefficient of the k-th derivative order for e_{k1} ♯ e_{k2}.
cplx bracket_coefficient(const Mode& k1, const Mode& k2, int k, int iota)
{
    const double sigma = double(k1.second) * k2.first - double(k1.first) * k2.second;
    const cplx base(0.0, -2.0 * pi2 * iota * sigma);
    cplx c = 1.0;
    for (int i = 1; i <= k; ++i) c *= base / double(i);
    return c;
}

GradedModes below(const GradedModes& a, int n)
{
    GradedModes r;
    for (const auto& [j, m] : a)
        if (j < n) r.emplace(j, m);
    return r;
}

} // namespace

ModeMatrixMap moyal_term(const GradedModes& A, const GradedModes& B, int n, const MoyalOptions& opt)
{
    if (opt.weight != 1 && opt.weight != 2) throw ConfigError("moyal weight must be 1 or 2");
    if (opt.iota != 1 && opt.iota != -1) throw ConfigError("iota must be +1 or -1");
    ModeMatrixMap out;
    for (const auto& [r, am] : A) {
        if (r > n) break;
        for (const auto& [l, bm] : B) {
            const int rest = n - r - l;
            if (rest < 0) break;
            if (rest % opt.weight) continue;
            const int k = rest / opt.weight;
            for (const auto& [k1, ma] : am)
                for (const auto& [k2, mb] : bm) {
                    const cplx c = k == 0 ? cplx(1.0) : bracket_coefficient(k1, k2, k, opt.iota);
                    if (c == cplx(0.0)) continue;
                    accumulate(out, {k1.first + k2.first, k1.second + k2.second}, ma * mb, c);
                }
        }
    }
    return out;
}

ModeMatrixMap moyal_term(const OperatorSymbol& A, const OperatorSymbol& B, int n, const MoyalOptions& opt)
{
    return moyal_term(A.grading, B.grading, n, opt);
}

GradedModes moyal_product(const GradedModes& A, const GradedModes& B, int max_grade, const MoyalOptions& opt)
{
    GradedModes r;
    for (int n = 0; n <= max_grade; ++n) {
        auto t = moyal_term(A, B, n, opt);
        if (!t.empty()) r.emplace(n, std::move(t));
    }
    return r;
}

GradedModes symbol_adjoint(const GradedModes& A)
{
    GradedModes r;
    for (const auto& [j, modes] : A)
        for (const auto& [k, m] : modes) r[j].emplace(Mode{-k.first, -k.second}, m.adjoint());
    return r;
}

ModeMatrixMap left_multiply(const CMatrix& P, const ModeMatrixMap& m)
{
    ModeMatrixMap r;
    for (const auto& [k, x] : m) r.emplace(k, P * x);
    return r;
}

ModeMatrixMap right_multiply(const ModeMatrixMap& m, const CMatrix& P)
{
    ModeMatrixMap r;
    for (const auto& [k, x] : m) r.emplace(k, x * P);
    return r;
}

ModeMatrixMap mode_sum(const ModeMatrixMap& a, const ModeMatrixMap& b, cplx sb)
{
    ModeMatrixMap r = a;
    for (const auto& [k, m] : b) accumulate(r, k, m, sb);
    return r;
}

double corner_norm(const ModeMatrixMap& m, std::size_t corner)
{
    double r = 0.0;
    for (const auto& [k, x] : m) {
        const std::size_t c = std::min({corner, x.rows(), x.cols()});
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) r = std::max(r, std::abs(x(i, j)));
    }
    return r;
}

CMatrix band_projector(const std::vector<int>& band, const FockTruncation& T)
{
    if (band.empty()) throw ConfigError("band set must be non-empty");
    std::vector<int> s = band;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || static_cast<std::size_t>(s[i]) >= T.dim()) throw ConfigError("band index outside truncation");
        if (i && s[i] != s[i - 1] + 1) throw ConfigError("band set must be contiguous");
    }
    CMatrix p(T.dim(), T.dim());
    for (int b : s) p(b, b) = 1.0;
    return p;
}

MoyalSeries build_projection(const OperatorSymbol& H, const std::vector<int>& band, int order, const MoyalOptions& opt)
{
    if (order < 0) throw ConfigError("order must be non-negative");
    const auto& T = H.truncation;
    const CMatrix pr = band_projector(band, T);
    require_truncation_budget(T, order, *std::max_element(band.begin(), band.end()));
    const auto& h0 = H.grade(0);
    if (h0.size() != 1 || !h0.count({0, 0})) throw ConfigError("grade 0 of H must be the constant Ξ");
    const CMatrix& xi = h0.at({0, 0});
    const std::size_t d = T.dim();
    const CMatrix comp = CMatrix::identity(d) - pr;
    std::vector<bool> in_band(d, false);
    for (int b : band) in_band[b] = true;

    MoyalSeries pi;
    pi.truncation = T;
    pi.lattice = H.lattice;
    pi.grading[0][{0, 0}] = pr;
    for (int n = 1; n <= order; ++n) {
        const ModeMatrixMap G = moyal_term(pi.grading, pi.grading, n, opt);
        ModeMatrixMap D = mode_sum(right_multiply(left_multiply(comp, G), comp),
                                   right_multiply(left_multiply(pr, G), pr), -1.0);
        GradedModes trial = pi.grading;
        if (!D.empty()) trial[n] = D;
        const ModeMatrixMap F =
            mode_sum(moyal_term(H.grading, trial, n, opt), moyal_term(trial, H.grading, n, opt), -1.0);
        ModeMatrixMap OD;
        for (const auto& [k, f] : F) {
            CMatrix x(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    if (in_band[i] == in_band[j]) continue;
                    x(i, j) = -f(i, j) / (xi(i, i) - xi(j, j));
                }
            OD.emplace(k, std::move(x));
        }
        ModeMatrixMap pn = mode_sum(D, OD);
        if (!pn.empty()) pi.grading[n] = std::move(pn);
    }
    pi.order_built = order;
    return pi;
}

MoyalSeries build_intertwiner(const MoyalSeries& pi, const std::vector<int>& band, int order, const MoyalOptions& opt)
{
    if (pi.order_built < order) throw ConfigError("projection series not built to the requested order");
    const auto& T = pi.truncation;
    const CMatrix pr = band_projector(band, T);
    MoyalSeries u;
    u.truncation = T;
    u.lattice = pi.lattice;
    u.grading[0][{0, 0}] = CMatrix::identity(T.dim());
    for (int n = 1; n <= order; ++n) {
        const ModeMatrixMap An = moyal_term(u.grading, symbol_adjoint(u.grading), n, opt);
        ModeMatrixMap a;
        for (const auto& [k, m] : An) a.emplace(k, -0.5 * m);
        GradedModes trial = u.grading;
        if (!a.empty()) trial[n] = a;
        const GradedModes left = moyal_product(trial, below(pi.grading, n + 1), n, opt);
        const ModeMatrixMap Bn = moyal_term(left, symbol_adjoint(trial), n, opt);
        const ModeMatrixMap b = mode_sum(left_multiply(pr, Bn), right_multiply(Bn, pr), -1.0);
        ModeMatrixMap un = mode_sum(a, b);
        if (!un.empty()) u.grading[n] = std::move(un);
    }
    u.order_built = order;
    return u;
}

double BlockSymbol::max_abs() const
{
    double r = 0.0;
    for (const auto& f : blocks)
        for (const auto& [k, c] : f.coeffs()) r = std::max(r, std::abs(c));
    return r;
}

EffectiveSymbols effective_symbol(const OperatorSymbol& H, const MoyalSeries& pi, const MoyalSeries& u, int order,
                                  const MoyalOptions& opt)
{
    if (pi.order_built < order || u.order_built < order) throw ConfigError("series not built to the requested order");
    std::vector<int> band;
    const auto& pr0 = pi.grade(0).at({0, 0});
    for (std::size_t i = 0; i < pr0.rows(); ++i)
        if (std::abs(pr0(i, i)) > 0.5) band.push_back(static_cast<int>(i));
    const std::size_t m = band.size();

    GradedModes chi;
    EffectiveSymbols out;
    out.band = band;
    for (int j = 0; j <= order; ++j) {
        ModeMatrixMap cj = mode_sum(moyal_term(u.grading, H.grading, j, opt), moyal_term(chi, u.grading, j, opt), -1.0);
        BlockSymbol blk;
        blk.size = m;
        int width = 0;
        for (const auto& [k, x] : cj) width = std::max({width, std::abs(k.first), std::abs(k.second)});
        blk.blocks.assign(m * m, FourierSeries2D(false, std::max(width, FourierSeries2D::default_cutoff)));
        for (const auto& [k, x] : cj)
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    const cplx c = x(band[a], band[b]);
                    if (c != cplx(0.0)) blk(a, b).add(k.first, k.second, c);
                }
        out.h.push_back(std::move(blk));
        if (!cj.empty()) chi[j] = std::move(cj);
    }
    return out;
}

double SaptResiduals::max() const
{
    double r = 0.0;
    for (const auto* v : {&pi_idempotent, &pi_hermitian, &pi_commutes, &u_unitary, &u_intertwines})
        for (double x : *v) r = std::max(r, x);
    return r;
}

SaptResiduals sapt_residuals(const OperatorSymbol& H, const MoyalSeries& pi, const MoyalSeries& u,
                             const std::vector<int>& band, const MoyalOptions& opt)
{
    const int order = std::min(pi.order_built, u.order_built);
    const auto& T = pi.truncation;
    const std::size_t corner = T.reliable_dim();
    const CMatrix pr = band_projector(band, T);
    const CMatrix one = CMatrix::identity(T.dim());
    const GradedModes pidag = symbol_adjoint(pi.grading);
    const GradedModes udag = symbol_adjoint(u.grading);
    const GradedModes up = moyal_product(u.grading, pi.grading, order, opt);

    SaptResiduals r;
    for (int j = 0; j <= order; ++j) {
        const ModeMatrixMap& pj = pi.grade(j);
        r.pi_idempotent.push_back(corner_norm(mode_sum(moyal_term(pi.grading, pi.grading, j, opt), pj, -1.0), corner));
        const auto it = pidag.find(j);
        r.pi_hermitian.push_back(corner_norm(mode_sum(pj, it == pidag.end() ? ModeMatrixMap{} : it->second, -1.0), corner));
        r.pi_commutes.push_back(corner_norm(
            mode_sum(moyal_term(H.grading, pi.grading, j, opt), moyal_term(pi.grading, H.grading, j, opt), -1.0),
            corner));
        ModeMatrixMap uu = moyal_term(u.grading, udag, j, opt);
        ModeMatrixMap upu = moyal_term(up, udag, j, opt);
        if (j == 0) {
            accumulate(uu, {0, 0}, one, -1.0);
            accumulate(upu, {0, 0}, pr, -1.0);
        }
        r.u_unitary.push_back(corner_norm(uu, corner));
        r.u_intertwines.push_back(corner_norm(upu, corner));
    }
    return r;
}

SaptResult run_sapt(const OperatorSymbol& H, const std::vector<int>& band, int order, const MoyalOptions& opt)
{
    SaptResult s;
    s.pi = build_projection(H, band, order, opt);
    s.u = build_intertwiner(s.pi, band, order, opt);
    s.effective = effective_symbol(H, s.pi, s.u, order, opt);
    s.residuals = sapt_residuals(H, s.pi, s.u, band, opt);
    return s;
}

} // namespace magbloch
