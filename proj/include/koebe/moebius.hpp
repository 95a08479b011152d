#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace koebe {

using cplx = std::complex<double>;

// Default numerical tolerance for point and trace comparisons.
inline constexpr double kTol = 1e-9;

// A point of the Riemann sphere: either a finite complex number or infinity.
class SpherePoint {
public:
    SpherePoint() = default;
    SpherePoint(cplx z) : z_(z) {}
    SpherePoint(double x) : z_(x, 0.0) {}
    static SpherePoint infinity() {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    bool is_infinity() const { return inf_; }
    // Finite value; throws InvalidArgument at infinity.
    cplx value() const;
    std::string to_string() const;

private:
    cplx z_{0.0, 0.0};
    bool inf_ = false;
};

double chordal_distance(const SpherePoint& p, const SpherePoint& q);
bool approx_equal(const SpherePoint& p, const SpherePoint& q, double tol = kTol);

// Element of PSL(2,C), stored with det 1 and a canonical sign: the first entry
// of modulus above 1e-9 has argument in (-pi/2, pi/2].
class Moebius {
public:
    Moebius() = default;
    // Normalizes by sqrt(det); throws DegenerateTriple when det vanishes.
    Moebius(cplx a, cplx b, cplx c, cplx d);

    static Moebius identity() { return {}; }

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    std::array<cplx, 4> entries() const { return {a_, b_, c_, d_}; }

    cplx trace() const { return a_ + d_; }
    Moebius inverse() const;
    Moebius operator*(const Moebius& o) const;
    SpherePoint operator()(const SpherePoint& z) const { return apply(z); }
    SpherePoint apply(const SpherePoint& z) const;
    double norm() const;  // Frobenius norm of the normalized matrix

private:
    static Moebius unimodular(cplx a, cplx b, cplx c, cplx d);
    void canonicalize_sign();

    cplx a_{1.0, 0.0}, b_{0.0, 0.0}, c_{0.0, 0.0}, d_{1.0, 0.0};
};

// Distance in PSL(2,C): max entry difference, minimized over the sign.
double psl_distance(const Moebius& m, const Moebius& n);
bool approx_equal(const Moebius& m, const Moebius& n, double tol = 1e-8);
Moebius conjugate(const Moebius& t, const Moebius& m);  // t m t^-1
Moebius commutator(const Moebius& x, const Moebius& y);  // x y x^-1 y^-1
// Trace of the commutator in SL(2,C); unlike the trace of commutator(x, y) it
// does not depend on the sign chosen for x or y.
cplx commutator_trace(const Moebius& x, const Moebius& y);

// Cross-ratio normalized so that cross_ratio(inf, 0, 1, z) == z.
cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                 const SpherePoint& z4);

using Triple = std::array<SpherePoint, 3>;

// The map sending (inf, 0, 1) to the given triple.
Moebius standard_frame_to(const Triple& t);
// The unique map with src[i] -> dst[i].
Moebius moebius_from_triples(const Triple& src, const Triple& dst);
Triple map_triple(const Moebius& m, const Triple& t);

struct ElementType {
    enum class Kind { Identity, Parabolic, Elliptic, Loxodromic };
    Kind kind = Kind::Identity;
    int order = 0;  // elliptic only; 0 means irrational rotation

    bool operator==(const ElementType&) const = default;
    std::string to_string() const;
};

ElementType classify(const Moebius& m, double tol = kTol);
std::vector<SpherePoint> fixed_points(const Moebius& m, double tol = kTol);

struct RightLeft {
    SpherePoint right;
    SpherePoint left;
};
// For an elliptic element of order other than 2: the right fixed point x has
// Im cr(x, z, Mz, M^2 z) > 0 for points z off the fixed set.
RightLeft right_left_fixed_points(const Moebius& m, double tol = kTol);

// True when m is elliptic with trace^2 = 4 cos^2(pi/n).
bool is_geometric_primitive(const Moebius& m, int n, double tol = kTol);

// Smallest-denominator fraction k/n (n <= max_den) within tol of x, if any.
std::pair<long, long> recognize_rational(double x, long max_den, double tol);

// Solves T x0 T^-1 = x and T y0 T^-1 = y in PSL(2,C). Throws
// InternalInconsistency when the pairs are not simultaneously conjugate.
Moebius solve_conjugator(const Moebius& x0, const Moebius& y0, const Moebius& x,
                         const Moebius& y);

}  // namespace koebe
