#include "magbloch/canonical_map.hpp"

namespace magbloch {

LinearCanonicalMap<Rational> paper_choice_map(const Vec2T<Rational>& a, const Vec2T<Rational>& b, Rational delta,
                                              int iota)
{
    if (iota != 1 && iota != -1) throw ConfigError("iota must be +1 or -1");
    if (delta <= Rational(0)) throw ConfigError("delta must be positive");
    const Rational area = a[0] * b[1] - a[1] * b[0];
    if (area <= Rational(0)) throw GeometryError("degenerate lattice in canonical map");
    const Vec2T<Rational> a_star{b[1] / area, -b[0] / area};
    const Vec2T<Rational> b_star{-a[1] / area, a[0] / area};
    return make_canonical_map<Rational>(Rational(1) / delta, Rational(iota) * delta * delta, b_star, a_star, b, a);
}

LinearCanonicalMap<Rational> landau_choice_map()
{
    const Vec2T<Rational> v{0, -1}, w{-1, 0};
    return make_canonical_map<Rational>(Rational(1), Rational(1), v, w, v, w);
}

} // namespace magbloch
