#include "magbloch/quantize.hpp"

#include "magbloch/eigensolver.hpp"
#include "magbloch/errors.hpp"
#include "magbloch/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace magbloch {

namespace {
constexpr double pi = std::numbers::pi;

std::size_t wrap(long j, std::size_t n)
{
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((j % m) + m) % m);
}
} // namespace

RationalFlux make_flux(long p, long q)
{
    if (q == 0) throw ConfigError("flux denominator must be nonzero");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const long g = std::gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    if (p == 0) q = 1;
    return {p, q};
}

Convention parse_convention(const std::string& s)
{
    if (s == "hofstadter") return Convention::hofstadter;
    if (s == "harper") return Convention::harper;
    throw ConfigError("unknown quantization convention '" + s + "' (expected hofstadter or harper)");
}

const char* convention_name(Convention c) { return c == Convention::harper ? "harper" : "hofstadter"; }

WeylMonomial WeylMonomial::identity(std::size_t n)
{
    WeylMonomial w;
    w.target_.resize(n);
    std::iota(w.target_.begin(), w.target_.end(), std::size_t{0});
    w.value_.assign(n, 1.0);
    return w;
}

WeylMonomial WeylMonomial::diagonal(std::vector<cplx> d)
{
    WeylMonomial w = identity(d.size());
    w.value_ = std::move(d);
    return w;
}

WeylMonomial WeylMonomial::cyclic_shift(std::size_t n, long shift, cplx phase)
{
    WeylMonomial w;
    w.target_.resize(n);
    for (std::size_t j = 0; j < n; ++j) w.target_[j] = wrap(static_cast<long>(j) + shift, n);
    w.value_.assign(n, phase);
    return w;
}

WeylMonomial WeylMonomial::operator*(const WeylMonomial& o) const
{
    if (o.size() != size()) throw std::invalid_argument("monomial size mismatch");
    WeylMonomial r;
    r.target_.resize(size());
    r.value_.resize(size());
    for (std::size_t j = 0; j < size(); ++j) {
        const std::size_t t = o.target_[j];
        r.target_[j] = target_[t];
        r.value_[j] = value_[t] * o.value_[j];
    }
    return r;
}

WeylMonomial WeylMonomial::inverse() const
{
    WeylMonomial r;
    r.target_.resize(size());
    r.value_.resize(size());
    for (std::size_t j = 0; j < size(); ++j) {
        r.target_[target_[j]] = j;
        r.value_[target_[j]] = 1.0 / value_[j];
    }
    return r;
}

WeylMonomial WeylMonomial::pow(long k) const
{
    WeylMonomial base = k < 0 ? inverse() : *this;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    WeylMonomial r = identity(size());
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

void WeylMonomial::accumulate_into(CMatrix& h, cplx s) const
{
    for (std::size_t j = 0; j < size(); ++j) h(target_[j], j) += s * value_[j];
}

CMatrix WeylMonomial::to_matrix() const
{
    CMatrix m(size(), size());
    accumulate_into(m, 1.0);
    return m;
}

WeylMonomial RotationPair::monomial(int n, int m, Convention c) const
{
    const double nm = double(n) * double(m);
    if (c == Convention::harper) {
        WeylMonomial w = V.pow(-n) * U.pow(-m);
        return WeylMonomial::diagonal(std::vector<cplx>(dim(), std::exp(cplx(0.0, -pi * nm * iota * theta)))) * w;
    }
    WeylMonomial w = U.pow(n) * V.pow(m);
    return WeylMonomial::diagonal(std::vector<cplx>(dim(), std::exp(cplx(0.0, pi * nm * iota * theta)))) * w;
}

RotationPair clock_shift_pair(const RationalFlux& flux, int iota, double beta1, double beta2)
{
    if (iota != 1 && iota != -1) throw ConfigError("iota must be +1 or -1");
    if (flux.q < 1 || std::gcd(flux.p, flux.q) != 1) throw ConfigError("clock_shift needs a reduced flux");
    const std::size_t q = static_cast<std::size_t>(flux.q);
    std::vector<cplx> d(q);
    for (std::size_t j = 0; j < q; ++j) {
        // reduce ι p j mod q so the phase stays exact for large j
        const long r = (static_cast<long>(iota) * flux.p % flux.q * static_cast<long>(j)) % flux.q;
        d[j] = std::exp(cplx(0.0, -(beta1 + 2.0 * pi * double(r) / double(flux.q))));
    }
    RotationPair rp;
    rp.U = WeylMonomial::diagonal(std::move(d));
    rp.V = WeylMonomial::cyclic_shift(q, 1, std::exp(cplx(0.0, -beta2)));
    rp.theta = flux.theta();
    rp.iota = iota;
    return rp;
}

std::pair<CMatrix, CMatrix> clock_shift(const RationalFlux& flux, int iota, double beta1, double beta2)
{
    const auto rp = clock_shift_pair(flux, iota, beta1, beta2);
    return {rp.U.to_matrix(), rp.V.to_matrix()};
}

CMatrix quantize_operator(const FourierSeries2D& f, const RotationPair& rep, Convention c)
{
    CMatrix h(rep.dim(), rep.dim());
    for (const auto& [k, coef] : f.coeffs()) rep.monomial(k.first, k.second, c).accumulate_into(h, coef);
    return h;
}

double MagneticBlochFamily::beta_period() const { return 2.0 * pi / double(flux_.q); }

MagneticBlochFamily quantize_series(const FourierSeries2D& f, const RationalFlux& flux, int iota, Convention c)
{
    if (!f.is_real_valued()) throw ConfigError("quantize_series needs a real-valued series");
    const RationalFlux fl = make_flux(flux.p, flux.q);
    return MagneticBlochFamily(fl, static_cast<std::size_t>(fl.q), [f, fl, iota, c](double b1, double b2) {
        return quantize_operator(f, clock_shift_pair(fl, iota, b1, b2), c);
    });
}

std::vector<double> beta_grid(double period, int n)
{
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = period * double(i) / double(n);
    return g;
}

SpectrumReport spectrum(const MagneticBlochFamily& fam, int n1, int n2, double tol_band, bool keep_samples)
{
    if (n1 < 8 || n2 < 8) throw ConfigError("spectrum grid must be at least 8x8");
    const auto g1 = beta_grid(fam.beta_period(), n1), g2 = beta_grid(fam.beta_period(), n2);
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(n1 * n2));
    parallel_for(samples.size(), [&](std::size_t idx) {
        const double b1 = g1[idx / n2], b2 = g2[idx % n2];
        const CMatrix h = fam.matrix_at(b1, b2);
        if (hermiticity_residual(h) > 1e-12 * std::max(1.0, h.max_abs())) {
            std::ostringstream os;
            os << "non-Hermitian family matrix at beta=(" << b1 << "," << b2 << ")";
            throw NumericError(os.str());
        }
        try {
            samples[idx] = eigvalsh(h);
        } catch (const NumericError& e) {
            std::ostringstream os;
            os << e.what() << " at beta=(" << b1 << "," << b2 << ")";
            throw NumericError(os.str());
        }
    });
    SpectrumReport r;
    r.flux = fam.flux();
    r.grid1 = n1;
    r.grid2 = n2;
    const std::size_t d = fam.dim();
    r.raw_bands.assign(d, Interval{INFINITY, -INFINITY});
    for (const auto& s : samples)
        for (std::size_t i = 0; i < d; ++i) {
            r.raw_bands[i].lo = std::min(r.raw_bands[i].lo, s[i]);
            r.raw_bands[i].hi = std::max(r.raw_bands[i].hi, s[i]);
        }
    const double width = d ? r.raw_bands.back().hi - r.raw_bands.front().lo : 0.0;
    r.tol_band = tol_band < 0.0 ? 1e-6 * width : tol_band;
    r.bands = merge_intervals(r.raw_bands, r.tol_band);
    if (keep_samples) r.samples = std::move(samples);
    return r;
}

std::vector<RationalFlux> reduced_fluxes(long q_max)
{
    if (q_max < 1) throw ConfigError("q_max must be >= 1");
    std::vector<RationalFlux> out{{0, 1}};
    for (long q = 2; q <= q_max; ++q)
        for (long p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) out.push_back({p, q});
    return out;
}

std::vector<SpectrumReport> butterfly(const FourierSeries2D& f, long q_max, int iota, Convention c, int n1, int n2,
                                      double tol_band)
{
    const auto fluxes = reduced_fluxes(q_max);
    std::vector<SpectrumReport> out(fluxes.size());
    parallel_for(fluxes.size(), [&](std::size_t i) {
        out[i] = spectrum(quantize_series(f, fluxes[i], iota, c), n1, n2, tol_band);
    });
    return out;
}

std::vector<double> almost_mathieu_spectrum(const RationalFlux& theta, double beta, int N)
{
    if (N < 3 * theta.q) throw ConfigError("almost-Mathieu size needs N >= 3q");
    if (N % theta.q) throw ConfigError("almost-Mathieu periodic size must be a multiple of q");
    const std::size_t n = static_cast<std::size_t>(N);
    CMatrix h(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const long r = (theta.p % theta.q) * static_cast<long>(j) % theta.q;
        h(j, j) = 2.0 * std::cos(2.0 * pi * double(r) / double(theta.q) + beta);
        h(j, (j + 1) % n) += 1.0;
        h((j + 1) % n, j) += 1.0;
    }
    return eigvalsh(h);
}

std::vector<Interval> almost_mathieu_bands(const RationalFlux& theta, int n_beta, int N, double tol_band)
{
    if (n_beta < 1) throw ConfigError("beta grid must be non-empty");
    const long q = theta.q;
    if (N % q) throw ConfigError("almost-Mathieu periodic size must be a multiple of q");
    const std::size_t per = static_cast<std::size_t>(N / q);
    const auto betas = beta_grid(2.0 * pi, n_beta);
    std::vector<std::vector<double>> all(betas.size());
    parallel_for(betas.size(), [&](std::size_t i) { all[i] = almost_mathieu_spectrum(theta, betas[i], N); });
    std::vector<Interval> bands(static_cast<std::size_t>(q), Interval{INFINITY, -INFINITY});
    for (const auto& ev : all)
        for (std::size_t k = 0; k < ev.size(); ++k) {
            auto& b = bands[k / per];
            b.lo = std::min(b.lo, ev[k]);
            b.hi = std::max(b.hi, ev[k]);
        }
    const double width = bands.back().hi - bands.front().lo;
    return merge_intervals(bands, tol_band < 0.0 ? 1e-6 * width : tol_band);
}

} // namespace magbloch
