#pragma once

#include "magbloch/complex_matrix.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace magbloch {

using Vec2 = std::array<double, 2>;
using Mode = std::pair<int, int>; // (n, m) with exp(i2π(n p_s + m x_s))

inline double dot(const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; }

struct Lattice2D {
    Vec2 a{}, b{};
    double area = 0.0;
    Vec2 a_star{}, b_star{};
    double ell = 0.0;
    cplx z_a, z_b;
};

Lattice2D make_lattice(const Vec2& a, const Vec2& b);
Lattice2D square_lattice();

class FourierSeries2D {
public:
    static constexpr int default_cutoff = 8;

    FourierSeries2D() = default;
    explicit FourierSeries2D(bool real_valued, int cutoff = default_cutoff) : real_(real_valued), cutoff_(cutoff) {}
    // Real-valued input is symmetrized: c(k) <- (c(k) + conj(c(-k)))/2.
    static FourierSeries2D from_modes(const std::vector<std::pair<Mode, cplx>>& modes, bool real_valued,
                                      int cutoff = default_cutoff);
    static FourierSeries2D constant(cplx c, bool real_valued = true);

    bool is_real_valued() const { return real_; }
    int cutoff() const { return cutoff_; }
    const std::map<Mode, cplx>& coeffs() const { return coeffs_; }
    cplx coeff(int n, int m) const;
    bool empty() const { return coeffs_.empty(); }
    bool is_zero(double tol = 0.0) const;
    int max_mode_index() const;

    // Adds to a single coefficient; the real-valued flag is not re-enforced.
    void add(int n, int m, cplx c);

    FourierSeries2D scaled(cplx s) const;
    FourierSeries2D plus(const FourierSeries2D& o) const;
    // Series of the pointwise complex conjugate function: c'(k) = conj(c(-k)).
    FourierSeries2D conj_function() const;
    // Drops coefficients with |c| <= tol.
    FourierSeries2D pruned(double tol) const;

private:
    bool real_ = false;
    int cutoff_ = default_cutoff;
    std::map<Mode, cplx> coeffs_;
};

cplx eval_series(const FourierSeries2D& f, double x1, double x2);
double max_coeff_diff(const FourierSeries2D& f, const FourierSeries2D& g);

FourierSeries2D directional_derivative_Dz(const FourierSeries2D& f, const Lattice2D& L);
FourierSeries2D directional_derivative_Dzbar(const FourierSeries2D& f, const Lattice2D& L);
FourierSeries2D laplacian_DzDzbar(const FourierSeries2D& f, const Lattice2D& L);
// Multiplier of laplacian_DzDzbar at mode (n, m).
double laplacian_multiplier(int n, int m, const Lattice2D& L);

// 2cos(2πp) + 2cos(2πx)
FourierSeries2D harper_potential(double amplitude = 1.0);

struct PeriodicVectorPotential {
    FourierSeries2D f1, f2;
    FourierSeries2D g;     // (z_a f1 + z_b f2)/√2
    FourierSeries2D g_bar; // series of the conjugate function of g
    bool is_zero() const { return f1.is_zero() && f2.is_zero(); }
};

// Enforces the Fourier divergence-free condition n f1 + m f2 = 0 on every mode.
PeriodicVectorPotential make_vector_potential(const FourierSeries2D& f1, const FourierSeries2D& f2,
                                              const Lattice2D& L);
PeriodicVectorPotential zero_vector_potential(const Lattice2D& L);
// f2 = 2ε cos(2πp_s), f1 = 0.
PeriodicVectorPotential one_mode_vector_potential(double eps, const Lattice2D& L);

} // namespace magbloch
