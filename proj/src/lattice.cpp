#include "magbloch/lattice.hpp"

#include "magbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace magbloch {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
const cplx I2PI(0.0, two_pi);
} // namespace

Lattice2D make_lattice(const Vec2& a, const Vec2& b)
{
    for (double v : {a[0], a[1], b[0], b[1]})
        if (!std::isfinite(v)) throw GeometryError("lattice generators must be finite");
    const double area = a[0] * b[1] - a[1] * b[0];
    const double scale = std::max(1e-300, std::hypot(a[0], a[1]) * std::hypot(b[0], b[1]));
    if (!(area > 1e-14 * scale)) {
        std::ostringstream os;
        os << "degenerate lattice: a1*b2 - a2*b1 = " << area << " must be positive";
        throw GeometryError(os.str());
    }
    Lattice2D L;
    L.a = a;
    L.b = b;
    L.area = area;
    L.a_star = {b[1] / area, -b[0] / area};
    L.b_star = {-a[1] / area, a[0] / area};
    L.ell = std::sqrt(area);
    L.z_a = cplx(a[0], -a[1]) / L.ell;
    L.z_b = cplx(b[0], -b[1]) / L.ell;
    return L;
}

Lattice2D square_lattice() { return make_lattice({1.0, 0.0}, {0.0, 1.0}); }

FourierSeries2D FourierSeries2D::from_modes(const std::vector<std::pair<Mode, cplx>>& modes, bool real_valued,
                                            int cutoff)
{
    FourierSeries2D f(real_valued, cutoff);
    for (const auto& [k, c] : modes) f.add(k.first, k.second, c);
    if (real_valued) {
        std::map<Mode, cplx> sym;
        for (const auto& [k, c] : f.coeffs_) {
            const Mode r{-k.first, -k.second};
            auto it = f.coeffs_.find(r);
            const cplx cr = it == f.coeffs_.end() ? cplx(0.0) : it->second;
            sym[k] = 0.5 * (c + std::conj(cr));
            sym[r] = std::conj(sym[k]);
        }
        f.coeffs_ = std::move(sym);
        for (auto it = f.coeffs_.begin(); it != f.coeffs_.end();)
            it = it->second == cplx(0.0) ? f.coeffs_.erase(it) : std::next(it);
    }
    return f;
}

FourierSeries2D FourierSeries2D::constant(cplx c, bool real_valued)
{
    FourierSeries2D f(real_valued);
    if (real_valued) c = c.real();
    if (c != cplx(0.0)) f.coeffs_[{0, 0}] = c;
    return f;
}

cplx FourierSeries2D::coeff(int n, int m) const
{
    auto it = coeffs_.find({n, m});
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

bool FourierSeries2D::is_zero(double tol) const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

int FourierSeries2D::max_mode_index() const
{
    int m = 0;
    for (const auto& [k, c] : coeffs_) m = std::max({m, std::abs(k.first), std::abs(k.second)});
    return m;
}

void FourierSeries2D::add(int n, int m, cplx c)
{
    if (std::abs(n) > cutoff_ || std::abs(m) > cutoff_) {
        std::ostringstream os;
        os << "Fourier mode (" << n << "," << m << ") exceeds cutoff " << cutoff_;
        throw ConfigError(os.str());
    }
    coeffs_[{n, m}] += c;
}

FourierSeries2D FourierSeries2D::scaled(cplx s) const
{
    FourierSeries2D r(real_ && s.imag() == 0.0, cutoff_);
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = s * c;
    return r;
}

FourierSeries2D FourierSeries2D::plus(const FourierSeries2D& o) const
{
    FourierSeries2D r(real_ && o.real_, std::max(cutoff_, o.cutoff_));
    r.coeffs_ = coeffs_;
    for (const auto& [k, c] : o.coeffs_) r.coeffs_[k] += c;
    return r;
}

FourierSeries2D FourierSeries2D::conj_function() const
{
    FourierSeries2D r(real_, cutoff_);
    for (const auto& [k, c] : coeffs_) r.coeffs_[{-k.first, -k.second}] = std::conj(c);
    return r;
}

FourierSeries2D FourierSeries2D::pruned(double tol) const
{
    FourierSeries2D r(real_, cutoff_);
    for (const auto& [k, c] : coeffs_)
        if (std::abs(c) > tol) r.coeffs_[k] = c;
    return r;
}

cplx eval_series(const FourierSeries2D& f, double x1, double x2)
{
    cplx s = 0.0;
    double mag = 0.0;
    for (const auto& [k, c] : f.coeffs()) {
        s += c * std::exp(I2PI * (k.first * x1 + k.second * x2));
        mag += std::abs(c);
    }
    if (f.is_real_valued()) {
        if (std::abs(s.imag()) > 1e-12 * std::max(1.0, mag))
            throw NumericError("real-valued series evaluated with imaginary residue");
        return s.real();
    }
    return s;
}

double max_coeff_diff(const FourierSeries2D& f, const FourierSeries2D& g)
{
    double m = 0.0;
    for (const auto& [k, c] : f.coeffs()) m = std::max(m, std::abs(c - g.coeff(k.first, k.second)));
    for (const auto& [k, c] : g.coeffs()) m = std::max(m, std::abs(c - f.coeff(k.first, k.second)));
    return m;
}

FourierSeries2D directional_derivative_Dz(const FourierSeries2D& f, const Lattice2D& L)
{
    FourierSeries2D r(false, f.cutoff());
    for (const auto& [k, c] : f.coeffs()) {
        const auto [n, m] = k;
        const cplx mult = I2PI * (double(m) * L.z_a - double(n) * L.z_b);
        if (mult != cplx(0.0)) r.add(n, m, mult * c);
    }
    return r;
}

FourierSeries2D directional_derivative_Dzbar(const FourierSeries2D& f, const Lattice2D& L)
{
    FourierSeries2D r(false, f.cutoff());
    for (const auto& [k, c] : f.coeffs()) {
        const auto [n, m] = k;
        const cplx mult = I2PI * (double(m) * std::conj(L.z_a) - double(n) * std::conj(L.z_b));
        if (mult != cplx(0.0)) r.add(n, m, mult * c);
    }
    return r;
}

double laplacian_multiplier(int n, int m, const Lattice2D& L)
{
    const double aa = dot(L.a, L.a), bb = dot(L.b, L.b), ab = dot(L.a, L.b);
    return -two_pi * two_pi / L.area * (aa * m * m - 2.0 * ab * n * m + bb * n * n);
}

FourierSeries2D laplacian_DzDzbar(const FourierSeries2D& f, const Lattice2D& L)
{
    FourierSeries2D r(f.is_real_valued(), f.cutoff());
    for (const auto& [k, c] : f.coeffs()) {
        const double mult = laplacian_multiplier(k.first, k.second, L);
        if (mult != 0.0) r.add(k.first, k.second, mult * c);
    }
    return r;
}

FourierSeries2D harper_potential(double amplitude)
{
    return FourierSeries2D::from_modes(
        {{{1, 0}, amplitude}, {{-1, 0}, amplitude}, {{0, 1}, amplitude}, {{0, -1}, amplitude}}, true);
}

PeriodicVectorPotential make_vector_potential(const FourierSeries2D& f1, const FourierSeries2D& f2,
                                              const Lattice2D& L)
{
    if (!f1.is_real_valued() || !f2.is_real_valued())
        throw GeometryError("vector potential components must be declared real-valued");
    std::map<Mode, std::pair<cplx, cplx>> modes;
    for (const auto& [k, c] : f1.coeffs()) modes[k].first = c;
    for (const auto& [k, c] : f2.coeffs()) modes[k].second = c;
    PeriodicVectorPotential A;
    A.f1 = f1;
    A.f2 = f2;
    const int cut = std::max(f1.cutoff(), f2.cutoff());
    A.g = FourierSeries2D(false, cut);
    A.g_bar = FourierSeries2D(false, cut);
    for (const auto& [k, c] : modes) {
        const auto [n, m] = k;
        const cplx div = double(n) * c.first + double(m) * c.second;
        const double scale = std::max(1.0, std::abs(c.first) + std::abs(c.second));
        if (std::abs(div) > 1e-12 * scale) {
            std::ostringstream os;
            os << "gauge condition n*f1 + m*f2 = 0 violated at mode (" << n << "," << m << "): |residual| = "
               << std::abs(div);
            throw GeometryError(os.str());
        }
        const cplx g = (L.z_a * c.first + L.z_b * c.second) / std::sqrt(2.0);
        const cplx gb = (std::conj(L.z_a) * c.first + std::conj(L.z_b) * c.second) / std::sqrt(2.0);
        if (g != cplx(0.0)) A.g.add(n, m, g);
        if (gb != cplx(0.0)) A.g_bar.add(n, m, gb);
    }
    return A;
}

PeriodicVectorPotential zero_vector_potential(const Lattice2D& L)
{
    return make_vector_potential(FourierSeries2D(true), FourierSeries2D(true), L);
}

PeriodicVectorPotential one_mode_vector_potential(double eps, const Lattice2D& L)
{
    return make_vector_potential(FourierSeries2D(true),
                                 FourierSeries2D::from_modes({{{1, 0}, eps}, {{-1, 0}, eps}}, true), L);
}

} // namespace magbloch
