#pragma once

#include "magbloch/errors.hpp"

#include <array>
#include <boost/rational.hpp>

namespace magbloch {

using Rational = boost::rational<long long>;

template <class T>
using Vec2T = std::array<T, 2>;

template <class T>
T dot2(const Vec2T<T>& u, const Vec2T<T>& v)
{
    return u[0] * v[0] + u[1] * v[1];
}

// Operator q·Q_r + (p/ħ)·P_r; p carries the coefficient times ħ.
template <class T>
struct CanonicalRow {
    Vec2T<T> q{};
    Vec2T<T> p{};
};

// Rows in the order K1, K2, G1, G2.
template <class T>
struct LinearCanonicalMap {
    std::array<CanonicalRow<T>, 4> rows{};
    T alpha_sq{}, beta_sq{};
};

// ratio = α/β and beta_sq = β² (both real for ι = ±1); αβ = ratio·β².
template <class T>
LinearCanonicalMap<T> make_canonical_map(T ratio, T beta_sq, const Vec2T<T>& v, const Vec2T<T>& w,
                                         const Vec2T<T>& v_star, const Vec2T<T>& w_star)
{
    const T one(1), zero(0), half = T(1) / T(2);
    if (!(dot2(v, v_star) == one && dot2(w, w_star) == one && dot2(v_star, w) == zero && dot2(v, w_star) == zero))
        throw GeometryError("canonical map needs v.v* = w.w* = 1 and v*.w = v.w* = 0");
    if (v[0] * w[1] - v[1] * w[0] == zero) throw GeometryError("canonical map needs v and w independent");
    const T prod = ratio * beta_sq;
    LinearCanonicalMap<T> m;
    m.alpha_sq = ratio * prod;
    m.beta_sq = beta_sq;
    auto scale = [](T s, const Vec2T<T>& x) { return Vec2T<T>{s * x[0], s * x[1]}; };
    m.rows[0] = {scale(-ratio * half, v), scale(-prod, w_star)};
    m.rows[1] = {scale(ratio * half, w), scale(-prod, v_star)};
    m.rows[2] = {scale(half, v), scale(-beta_sq, w_star)};
    m.rows[3] = {scale(half, w), scale(beta_sq, v_star)};
    return m;
}

// [X_i, X_j] = i·table[i][j]; from [aQ + bP, cQ + dP] = iħ(a·d − b·c).
template <class T>
std::array<std::array<T, 4>, 4> ccr_table(const LinearCanonicalMap<T>& m)
{
    std::array<std::array<T, 4>, 4> t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t[i][j] = dot2(m.rows[i].q, m.rows[j].p) - dot2(m.rows[i].p, m.rows[j].q);
    return t;
}

// v = b*, w = a*, v* = b, w* = a, α = √ι, β = √ι·δ.
LinearCanonicalMap<Rational> paper_choice_map(const Vec2T<Rational>& a, const Vec2T<Rational>& b, Rational delta,
                                              int iota);
// v = v* = (0,−1), w = w* = (−1,0), α = β = 1.
LinearCanonicalMap<Rational> landau_choice_map();

} // namespace magbloch
