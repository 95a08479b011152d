// Independent reference computations for the tests. Nothing here calls the
// library; each value is computed from its defining formula with plain
// complex 2x2 arithmetic so that tests compare two separate derivations.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
const cplx I(0.0, 1.0);

struct M2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

inline M2 mul(const M2& x, const M2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
}
inline cplx det(const M2& m) { return m.a * m.d - m.b * m.c; }
inline M2 scale(const M2& m, cplx s) { return {m.a * s, m.b * s, m.c * s, m.d * s}; }
inline M2 normalize(const M2& m) { return scale(m, 1.0 / std::sqrt(det(m))); }
inline M2 inv(const M2& m) { return scale(M2{m.d, -m.b, -m.c, m.a}, 1.0 / det(m)); }
inline cplx trace(const M2& m) { return m.a + m.d; }

// Sign convention: the first entry of modulus above 1e-9 has argument in (-pi/2, pi/2].
inline M2 canonical(const M2& m) {
    M2 n = normalize(m);
    for (cplx e : {n.a, n.b, n.c, n.d}) {
        if (std::abs(e) > 1e-9) {
            double arg = std::arg(e);
            bool keep = arg > -kPi / 2 + 1e-15 && arg <= kPi / 2 + 1e-15;
            return keep ? n : scale(n, -1.0);
        }
    }
    return n;
}

inline double entry_distance(const M2& x, const M2& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}
// Distance in PSL(2,C) between normalized representatives.
inline double psl_distance(const M2& x, const M2& y) {
    M2 u = normalize(x), v = normalize(y);
    return std::min(entry_distance(u, v), entry_distance(u, scale(v, -1.0)));
}
inline bool is_plus_minus_identity(const M2& m, double tol) {
    return psl_distance(m, M2{}) < tol;
}

inline cplx act(const M2& m, cplx z) { return (m.a * z + m.b) / (m.c * z + m.d); }

// Normalized so that cr(inf, 0, 1, z) = z; all points finite here.
inline cplx cross_ratio(cplx z1, cplx z2, cplx z3, cplx z4) {
    return ((z4 - z2) * (z3 - z1)) / ((z4 - z1) * (z3 - z2));
}

// Trace of a primitive element of order nu, up to sign; nu = 0 means a cusp.
inline double primitive_trace(int nu) { return nu == 0 ? 2.0 : 2.0 * std::cos(kPi / nu); }

// Canonical generators at (inf, 0, 1) written out from their closed forms.
inline std::array<M2, 2> cusp_parabolic() {  // (inf, 2, 2): z + 2 and -z
    return {M2{1.0, 2.0, 0.0, 1.0}, M2{I, 0.0, 0.0, -I}};
}
inline std::array<M2, 2> dihedral(int nu) {  // (nu, 2, 2): rotation by 2 pi / nu and 1/z
    cplx e = std::polar(1.0, kPi / nu);
    return {M2{e, 0.0, 0.0, 1.0 / e}, M2{0.0, I, I, 0.0}};
}
// Hyperbolic group with an infinite first entry.
inline std::array<M2, 2> hyperbolic_cusp(int nu2, int nu3) {
    double q2 = std::cos(kPi / nu2), q3 = nu3 == 0 ? 1.0 : std::cos(kPi / nu3);
    if (nu2 == 0) q2 = 1.0;
    double b = (q2 * q2 - 1.0) / (q2 + q3);
    return {M2{-1.0, -2.0, 0.0, -1.0}, M2{-q2, b, q2 + q3, -q2}};
}

struct KH {
    double k, h, l;
};
// Finite first entry; nu = 0 encodes infinity for the other two.
inline KH hyperbolic_kh(int nu1, int nu2, int nu3) {
    auto q = [](int v) { return v == 0 ? 1.0 : std::cos(kPi / v); };
    auto p = [](int v) { return v == 0 ? 0.0 : std::sin(kPi / v); };
    double q1 = q(nu1), q2 = q(nu2), q3 = q(nu3), p1 = p(nu1), p2 = p(nu2);
    double l = std::sqrt(q1 * q1 + q2 * q2 + q3 * q3 + 2 * q1 * q2 * q3 - 1);
    double k = (q2 + q1 * q3 + q1 * l) / (p1 * l);
    double h = k * p1 * p2 / (q1 * q2 + q3 + l);
    return {k, h, l};
}
inline std::array<M2, 2> hyperbolic_finite(int nu1, int nu2, int nu3) {
    KH v = hyperbolic_kh(nu1, nu2, nu3);
    double q1 = std::cos(kPi / nu1), p1 = std::sin(kPi / nu1);
    double q2 = std::cos(kPi / nu2), p2 = std::sin(kPi / nu2);
    return {M2{-q1, -v.k * p1, p1 / v.k, -q1}, M2{-q2, -v.h * p2, p2 / v.h, -q2}};
}

// m = cosh d, n = sinh d with d = log(k / h) for a base (mu, mu, nu).
inline std::pair<double, double> hnn_mn(int mu, int nu) {
    KH v = hyperbolic_kh(mu, mu, nu);
    return {v.k / (2 * v.h) + v.h / (2 * v.k), v.k / (2 * v.h) - v.h / (2 * v.k)};
}

// Literal rescaled map D of the general HNN row, as a Moebius map of z.
inline M2 hnn_literal_d(double m, double n) { return {1.0, (1 - m) / n, -n, (m - 1) / 2}; }

// Plumbing values written from the closed forms.
inline cplx plumb_cusp(cplx alpha) { return std::exp(kPi * I * alpha); }
inline cplx plumb_power(cplx z, int mu) { return std::pow(z, mu); }
inline cplx plumb_tetrahedral(cplx tau2) { return -27.0 / 8.0 * std::pow(tau2, 3); }

inline M2 random_moebius(std::mt19937_64& rng, double spread = 2.0) {
    std::uniform_real_distribution<double> u(-spread, spread);
    for (;;) {
        M2 m{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        if (std::abs(det(m)) > 0.25) return normalize(m);
    }
}

}  // namespace oracle

namespace oracle {

// Involution exchanging B and A for a base (mu, mu, nu) at (-1, 1, (-1+ki)/(1+ki)).
inline M2 hnn_literal_t(double m, double n) {
    double r = std::sqrt((m + 1) / 2);
    return {I * r, I * (1 - m) * r / n, I * n / (2 * r), I * (-1 - m) / (2 * r)};
}

// Largest |tau^2| for which a disc bounded by a B-invariant circle is carried
// by C = (z -> tau^2 / z) o T off the matching disc about the fixed point of A
// at the origin. T sends the B-invariant circles to circles about 0, so the
// image disc is |z| < |tau^2| / r and disjointness reads |tau^2| < r (|c| - s).
inline double hnn_circle_bound(double m, double n, int samples = 20000) {
    M2 t = hnn_literal_t(m, n), ti = inv(t);
    cplx f = ti.b / ti.d;  // T^-1(0)
    cplx g = ti.a / ti.c;  // T^-1(inf)
    double best = 0.0;
    for (int j = 1; j < samples; ++j) {
        double rho = static_cast<double>(j) / samples;
        cplx c = (f - rho * rho * g) / (1 - rho * rho);
        double s = rho * std::abs(f - g) / (1 - rho * rho);
        double r = std::abs(act(t, c + s));
        best = std::max(best, r * (std::abs(c) - s));
    }
    return best;
}

}  // namespace oracle
