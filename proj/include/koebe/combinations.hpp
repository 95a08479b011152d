#pragma once

#include <optional>
#include <string>
#include <vector>

#include "koebe/triangle.hpp"

namespace koebe {

enum class CombinationKind { Afp, Hnn };

// Supported pairings for amalgamated free products, named by the classes of
// the two factors and whether the shared element is parabolic.
enum class AfpRow {
    HypHypCusp,
    HypParCusp,
    ParParCusp,
    HypHypFinite,
    HypParFinite,
    HypEll,
    ParParFinite,
    ParEll,
    EllEll,
};

// Base signatures (mu, mu, nu) supporting an HNN extension.
enum class HnnRow {
    CuspCusp,     // (inf, inf, nu)
    General,      // (mu, mu, nu) hyperbolic, mu finite
    Square,       // (4, 4, 2)
    Hexagonal,    // (3, 3, 3)
    Tetrahedral,  // (3, 3, 2)
};

const char* to_string(AfpRow r);
const char* to_string(HnnRow r);

AfpRow afp_row(const Signature& s1, const Signature& s2);
HnnRow hnn_row(const Signature& s);

// Standard placement of the first factor; the frame of every row.
Triple afp_first_params(AfpRow row, const Signature& s1);
// Parameters of the second factor as a function of the coordinate.
Triple afp_second_params(AfpRow row, const Signature& s2, cplx alpha);
Triple hnn_base_params(HnnRow row, const Signature& s);

// Elliptic factors (mu, nu, 2): the second fixed point of B in the standard
// position, x = (q_mu q_nu - p_mu p_nu) / (q_mu q_nu + p_mu p_nu).
double elliptic_second_fixed_point(const Signature& s);
// The second factor sits at (0, inf, alpha * scale) in the finite rows that
// use that placement; the scale is 1/x for elliptic second factors, else 1.
double afp_second_scale(AfpRow row, const Signature& s2);
bool is_cusp_row(AfpRow row);

struct ContainmentDomain {
    enum class Kind { HalfPlane, PuncturedDisc };
    Kind kind;
    double bound;  // Im z > bound, or 0 < |z| < bound

    bool contains(cplx z) const;
    std::string describe() const;
};

struct AfpSpec {
    Signature first, second;
    cplx alpha;
    Moebius frame;  // applied to the standard placement; identity by default
};

struct HnnSpec {
    Signature base;
    cplx coordinate;  // tau for (inf, inf, nu), tau^2 otherwise
    Moebius frame;
};

struct GroupAssembly {
    CombinationKind kind;
    std::optional<AfpRow> afp;
    std::optional<HnnRow> hnn;
    Ramification weight;
    CanonicalPair g1;
    std::optional<CanonicalPair> g2;  // amalgamated products
    std::optional<Moebius> c;         // HNN extensions
    Moebius shared;                   // the uniformizing element of the curve (A of g1)
    cplx coordinate;
    ContainmentDomain domain;
    // False when the coordinate lies outside the domain in which the
    // combination theorem certifies discreteness.
    bool discreteness_certified = false;

    std::string row_name() const;
    std::vector<Moebius> generators() const;
};

GroupAssembly build_afp(const AfpSpec& spec);
// Every matrix and parameter of the assembly moved by t.
GroupAssembly conjugate(const Moebius& t, const GroupAssembly& g);
GroupAssembly build_hnn(const HnnSpec& spec);

// Conjugation-invariant coordinate recovered from the assembly's data alone.
cplx afp_coordinate(const GroupAssembly& g);
cplx hnn_coordinate(const GroupAssembly& g);
cplx combination_coordinate(const GroupAssembly& g);

// Involution T with T^2 = +-I and T B T^-1 = A for a base group of an HNN row.
Moebius conjugating_involution(const CanonicalPair& pair);

ContainmentDomain afp_domain(AfpRow row, const Signature& s1, const Signature& s2);
ContainmentDomain hnn_domain(HnnRow row, const Signature& s);
ContainmentDomain coordinate_domain(const GroupAssembly& g);

// Supremum over B-invariant circles of the largest |tau^2| for which the
// conjugator carries the circle's inside off the matching A-invariant disc.
double hnn_separation_bound(HnnRow row, const Signature& s);

}  // namespace koebe
