#include "magbloch/spectra.hpp"

#include "magbloch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace magbloch {

namespace {

double distance_to(double x, const std::vector<Interval>& s)
{
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : s) {
        if (x >= iv.lo && x <= iv.hi) return 0.0;
        d = std::min({d, std::abs(x - iv.lo), std::abs(x - iv.hi)});
    }
    return d;
}

// sup over a of the distance to b.
double directed(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    std::vector<double> cand;
    for (const auto& iv : a) {
        cand.push_back(iv.lo);
        cand.push_back(iv.hi);
    }
    std::vector<Interval> sb = b;
    std::sort(sb.begin(), sb.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (std::size_t i = 0; i + 1 < sb.size(); ++i) {
        const double mid = 0.5 * (sb[i].hi + sb[i + 1].lo);
        for (const auto& iv : a) cand.push_back(std::clamp(mid, iv.lo, iv.hi));
    }
    double r = 0.0;
    for (double x : cand) r = std::max(r, distance_to(x, b));
    return r;
}

} // namespace

std::vector<Interval> merge_intervals(std::vector<Interval> v, double tol)
{
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && (iv.lo < out.back().hi - tol || iv.hi <= out.back().hi + tol))
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

double total_measure(const std::vector<Interval>& v)
{
    double s = 0.0;
    for (const auto& iv : merge_intervals(v, 0.0)) s += iv.length();
    return s;
}

double hausdorff_interval_sets(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    if (a.empty() || b.empty()) throw NumericError("Hausdorff distance of an empty set");
    return std::max(directed(a, b), directed(b, a));
}

double sorted_list_distance(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t n = std::min(a.size(), b.size());
    if (n == 0) throw NumericError("distance between empty spectra");
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor)
{
    if (x.size() != y.size()) throw ConfigError("slope fit needs matching lists");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i] > floor && x[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    SlopeFit f;
    f.points_used = static_cast<int>(lx.size());
    if (lx.size() < 2) throw NumericError("fewer than two uncensored points for slope fit");
    const double n = double(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    if (den <= 0.0) throw NumericError("degenerate abscissae in slope fit");
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (f.intercept + f.slope * lx[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

} // namespace magbloch
