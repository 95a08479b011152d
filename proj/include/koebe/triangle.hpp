#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "koebe/moebius.hpp"

namespace koebe {

// Ramification value: an integer >= 2 or infinity (a puncture).
class Ramification {
public:
    Ramification() = default;
    explicit Ramification(int order);
    static Ramification infinite() {
        Ramification r;
        r.order_ = 0;
        return r;
    }

    bool is_infinite() const { return order_ == 0; }
    int order() const;     // throws at infinity
    double q() const;      // cos(pi/nu), 1 at infinity
    double p() const;      // sin(pi/nu), 0 at infinity
    bool is(int n) const { return order_ == n; }
    std::string to_string() const;

    bool operator==(const Ramification&) const = default;

private:
    int order_ = 2;  // 0 encodes infinity
};

using Signature = std::array<Ramification, 3>;

enum class SignatureClass { Hyperbolic, Parabolic, Elliptic };
const char* to_string(SignatureClass c);

// Exact sign of 1 - (1/nu1 + 1/nu2 + 1/nu3).
SignatureClass signature_class(const Signature& nu);
std::string signature_string(const Signature& nu);
Signature rotate(const Signature& nu, int slot);  // (nu_s, nu_{s+1}, nu_{s+2})

struct TriangleSpec {
    Signature nu;
    Triple params;

    SignatureClass group_class() const { return signature_class(nu); }
    // Throws UnsupportedSignature when nu1 <= 2, DegenerateTriple on repeated parameters.
    void validate() const;
};

enum class Construction {
    HyperbolicCusp,     // nu1 infinite
    HyperbolicFinite,   // nu1 finite
    ParabolicCusp,      // (inf, 2, 2)
    ParabolicFinite,    // all finite, reciprocal sum 1
    EllipticDihedral,   // (nu, 2, 2)
    EllipticGeneric,    // (nu1, nu2, 2)
};
const char* to_string(Construction c);

struct CanonicalPair {
    TriangleSpec spec;
    Construction construction;
    Moebius A, B;
    Moebius frame;  // sends the construction's standard parameters (inf, 0, 1) to spec.params
    std::array<double, 3> q{}, p{};
    // Hyperbolic finite case only.
    std::optional<double> k, h, l;
    // Elliptic (nu, 2, 2): the parametrization is not unique; the other fixed
    // point of B is exposed as the alternative fourth point.
    bool non_unique = false;
    std::optional<SpherePoint> alternate_fourth;

    Moebius AB() const { return A * B; }
    // g1 = A, g2 = B, g3 = (AB)^-1, so g1 g2 g3 = 1.
    std::array<Moebius, 3> generators() const;
};

CanonicalPair canonical_generators(const TriangleSpec& spec);
// The pair moved by t: parameters t(a), t(b), t(c) and generators t X t^-1.
CanonicalPair conjugate(const Moebius& t, const CanonicalPair& pair);
CanonicalPair canonical_generators(const Signature& nu, const Triple& params);

// Parameters (inf, 0, 1) as a triple.
Triple standard_params();
// Hyperbolic frame (-1, 1, (-1+ki)/(1+ki)) with k from the standard construction.
Triple hyperbolic_frame_params(const Signature& nu);

// The pair (g_s, g_{s+1}) of `base`, which is canonical for the rotated
// signature at some parameters; returns that pair. Throws UnsupportedSignature
// when the rotated signature has no construction.
CanonicalPair rotated_presentation(const CanonicalPair& base, int slot);

// Geometry attached to a hyperbolic group with finite nu1 and nu2: the
// distance d between the lifts of P1 and P2 in the canonical position, as
// m = cosh d and n = sinh d.
struct HyperbolicDistance {
    double d, m, n;
};
HyperbolicDistance cone_distance(const Signature& nu);

bool well_ordered(const SpherePoint& z1, const SpherePoint& z2, const Triple& abc);

struct RevisitedReport {
    bool ordering_accepts;     // fixed-point lines plus well ordering
    bool right_left_accepts;   // fixed-point lines plus left fixed point of A in Delta
};
RevisitedReport revisited_characterizations(const Moebius& A, const Moebius& B,
                                            const TriangleSpec& spec);
// True when both characterizations accept the pair as canonical.
bool hyperbolic_revisited_check(const CanonicalPair& pair, const TriangleSpec& spec);

// Which half of an amalgamation a group plays; selects where the chart puts
// the cone point.
enum class ChartRole { First, Second };

struct PreferredCoordinate {
    enum class Kind { Cusp, FiniteAtZero, FiniteAtInfinity };
    Kind kind;
    int exponent = 1;   // nu of the marked point; 1 for cusps
    SpherePoint base;   // lift of the marked point
    // Normalizing map: base -> 0 (finite at zero), base -> inf otherwise.
    Moebius frame;

    cplx evaluate(const SpherePoint& xi) const;
};
const char* to_string(PreferredCoordinate::Kind k);

// Lift of marked point `slot` (0-based) used by charts and radii.
SpherePoint marked_point_lift(const CanonicalPair& pair, int slot);

PreferredCoordinate preferred_coordinate(const CanonicalPair& pair, int at, int relative_to,
                                         ChartRole role = ChartRole::First);
PreferredCoordinate preferred_coordinate(const TriangleSpec& spec, int at, int relative_to,
                                         ChartRole role = ChartRole::First);

struct ProtectiveDisc {
    enum class Kind { Disc, DiscAtInfinity, Horodisc };
    Kind kind;
    SpherePoint center;  // the lift
    // Disc: Euclidean radius. DiscAtInfinity: radius in the coordinate 1/z.
    // Horodisc: height above the boundary line in the frame where the
    // stabilizer is z -> z + 2 and the cusp is at infinity.
    double radius;
};
using ProtectiveRadii = std::array<ProtectiveDisc, 3>;

ProtectiveRadii protective_radii(const TriangleSpec& spec, int max_word_length = 8);

}  // namespace koebe
