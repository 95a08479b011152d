#include "koebe/combinations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "koebe/error.hpp"

namespace koebe {

namespace {

const cplx I(0.0, 1.0);

bool is_dihedral(const Signature& s) {
    return signature_class(s) == SignatureClass::Elliptic && s[1].is(2) && s[2].is(2);
}


// Standard conjugator in the row frame; `coordinate` is tau for the cusp row
// and tau^2 for the others.
Moebius standard_conjugator(HnnRow row, const Signature& s, cplx coordinate);
Moebius standard_involution(HnnRow row, const Signature& s);

double cusp_row_scale(const Signature& s) { return std::sqrt(2.0 / (1.0 + s[2].q())); }

Moebius standard_conjugator(HnnRow row, const Signature& s, cplx coordinate) {
    switch (row) {
        case HnnRow::CuspCusp: {
            double sc = cusp_row_scale(s);
            return Moebius(coordinate, sc, 1.0 / sc, 0.0);
        }
        case HnnRow::General:
            return Moebius(0.0, coordinate, 1.0, 0.0) * standard_involution(row, s);
        case HnnRow::Square:
        case HnnRow::Hexagonal: return Moebius(0.0, coordinate, -1.0, 1.0);
        case HnnRow::Tetrahedral: return Moebius(-3.0 * coordinate, 3.0 * coordinate, 2.0, 1.0);
    }
    fail(ErrorCode::InternalInconsistency, "unreachable");
}

Moebius standard_involution(HnnRow row, const Signature& s) {
    switch (row) {
        case HnnRow::CuspCusp: return Moebius(0.0, -2.0 / (1.0 + s[2].q()), 1.0, 0.0);
        case HnnRow::General: {
            HyperbolicDistance hd = cone_distance(s);
            double m = hd.m, n = hd.n, r = std::sqrt((m + 1.0) / 2.0);
            return Moebius(I * r, I * (1.0 - m) * r / n, I * n / (2.0 * r),
                           -I * (1.0 + m) / (2.0 * r));
        }
        case HnnRow::Square:
        case HnnRow::Hexagonal: return Moebius(-1.0, 1.0, 0.0, 1.0);
        case HnnRow::Tetrahedral: return Moebius(2.0, 1.0, 2.0, -2.0);
    }
    fail(ErrorCode::InternalInconsistency, "unreachable");
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const int samples = 4000;
    double best_t = lo, best = -1e300;
    for (int i = 1; i < samples; ++i) {
        double t = lo + (hi - lo) * i / samples;
        double v = f(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    double a = std::max(lo, best_t - (hi - lo) / samples), b = std::min(hi, best_t + (hi - lo) / samples);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
        double c = b - g * (b - a), d = a + g * (b - a);
        if (f(c) > f(d)) b = d; else a = c;
    }
    return std::max(best, f(0.5 * (a + b)));
}

}  // namespace

const char* to_string(AfpRow r) {
    switch (r) {
        case AfpRow::HypHypCusp: return "afp/hyp-hyp/inf";
        case AfpRow::HypParCusp: return "afp/hyp-par/inf";
        case AfpRow::ParParCusp: return "afp/par-par/inf";
        case AfpRow::HypHypFinite: return "afp/hyp-hyp/finite";
        case AfpRow::HypParFinite: return "afp/hyp-par/finite";
        case AfpRow::HypEll: return "afp/hyp-ell/finite";
        case AfpRow::ParParFinite: return "afp/par-par/finite";
        case AfpRow::ParEll: return "afp/par-ell/finite";
        case AfpRow::EllEll: return "afp/ell-ell/finite";
    }
    return "?";
}

const char* to_string(HnnRow r) {
    switch (r) {
        case HnnRow::CuspCusp: return "hnn/(inf,inf,nu)";
        case HnnRow::General: return "hnn/(mu,mu,nu)";
        case HnnRow::Square: return "hnn/(4,4,2)";
        case HnnRow::Hexagonal: return "hnn/(3,3,3)";
        case HnnRow::Tetrahedral: return "hnn/(3,3,2)";
    }
    return "?";
}

AfpRow afp_row(const Signature& s1, const Signature& s2) {
    if (!(s1[0] == s2[0]))
        fail(ErrorCode::SharedElementMismatch, "factors " + signature_string(s1) + " and " +
                                                   signature_string(s2) +
                                                   " disagree on the amalgamated order");
    if (is_dihedral(s1) || is_dihedral(s2))
        fail(ErrorCode::EllipticDihedralFactor,
             "an elliptic (nu,2,2) factor has no unique parametrization");
    SignatureClass c1 = signature_class(s1), c2 = signature_class(s2);
    using C = SignatureClass;
    if (s1[0].is_infinite()) {
        if (c1 == C::Hyperbolic && c2 == C::Hyperbolic) return AfpRow::HypHypCusp;
        if (c1 == C::Hyperbolic && c2 == C::Parabolic) return AfpRow::HypParCusp;
        if (c1 == C::Parabolic && c2 == C::Parabolic) return AfpRow::ParParCusp;
    } else {
        if (c1 == C::Hyperbolic && c2 == C::Hyperbolic) return AfpRow::HypHypFinite;
        if (c1 == C::Hyperbolic && c2 == C::Parabolic) return AfpRow::HypParFinite;
        if (c1 == C::Hyperbolic && c2 == C::Elliptic) return AfpRow::HypEll;
        if (c1 == C::Parabolic && c2 == C::Parabolic) return AfpRow::ParParFinite;
        if (c1 == C::Parabolic && c2 == C::Elliptic) return AfpRow::ParEll;
        if (c1 == C::Elliptic && c2 == C::Elliptic) return AfpRow::EllEll;
    }
    fail(ErrorCode::UnsupportedRow, std::string("no amalgamation row for ") + to_string(c1) + " " +
                                        signature_string(s1) + " with " + to_string(c2) + " " +
                                        signature_string(s2) +
                                        "; swapping the factors flips the curve orientation");
}

HnnRow hnn_row(const Signature& s) {
    if (!(s[0] == s[1]))
        fail(ErrorCode::UnsupportedRow, "HNN base " + signature_string(s) + " needs nu1 = nu2");
    if (s[0].is_infinite()) return HnnRow::CuspCusp;
    SignatureClass c = signature_class(s);
    if (c == SignatureClass::Hyperbolic) return HnnRow::General;
    if (s[0].is(4) && s[2].is(2)) return HnnRow::Square;
    if (s[0].is(3) && s[2].is(3)) return HnnRow::Hexagonal;
    if (s[0].is(3) && s[2].is(2)) return HnnRow::Tetrahedral;
    fail(ErrorCode::UnsupportedRow, "no HNN row for base " + signature_string(s));
}

double afp_second_scale(AfpRow row, const Signature& s2) {
    switch (row) {
        case AfpRow::HypEll:
        case AfpRow::ParEll:
        case AfpRow::EllEll: return 1.0 / elliptic_second_fixed_point(s2);
        default: return 1.0;
    }
}

bool is_cusp_row(AfpRow row) {
    return row == AfpRow::HypHypCusp || row == AfpRow::HypParCusp || row == AfpRow::ParParCusp;
}

double elliptic_second_fixed_point(const Signature& s) {
    double q1 = s[0].q(), q2 = s[1].q(), p1 = s[0].p(), p2 = s[1].p();
    return (q1 * q2 - p1 * p2) / (q1 * q2 + p1 * p2);
}

Triple afp_first_params(AfpRow row, const Signature& s1) {
    switch (row) {
        case AfpRow::HypHypFinite:
        case AfpRow::HypParFinite:
        case AfpRow::HypEll: return hyperbolic_frame_params(s1);
        default: return standard_params();
    }
}

Triple afp_second_params(AfpRow row, const Signature& s2, cplx alpha) {
    if (is_cusp_row(row))
        return {SpherePoint::infinity(), SpherePoint(alpha), SpherePoint(alpha - 1.0)};
    if (row == AfpRow::HypHypFinite) {
        Moebius s(0.0, alpha, 1.0, 0.0);  // z -> alpha / z
        return map_triple(s, hyperbolic_frame_params(s2));
    }
    return {SpherePoint(0.0), SpherePoint::infinity(), SpherePoint(alpha * afp_second_scale(row, s2))};
}

Triple hnn_base_params(HnnRow row, const Signature& s) {
    return row == HnnRow::General ? hyperbolic_frame_params(s) : standard_params();
}

// ---------------------------------------------------------------- domains

bool ContainmentDomain::contains(cplx z) const {
    if (kind == Kind::HalfPlane) return z.imag() > bound;
    double r = std::abs(z);
    return r > 0.0 && r < bound;
}

std::string ContainmentDomain::describe() const {
    std::ostringstream os;
    os.precision(12);
    if (kind == Kind::HalfPlane) os << "Im > " << bound;
    else os << "0 < |z| < " << bound;
    return os.str();
}

ContainmentDomain afp_domain(AfpRow row, const Signature& s1, const Signature& s2) {
    if (is_cusp_row(row)) return {ContainmentDomain::Kind::HalfPlane, 1.0};
    double d = protective_radii(TriangleSpec{s1, afp_first_params(row, s1)})[0].radius;
    double big_d = 1.0;
    if (signature_class(s2) != SignatureClass::Hyperbolic) {
        ProtectiveDisc pd = protective_radii(TriangleSpec{s2, afp_second_params(row, s2, 1.0)})[0];
        if (pd.kind != ProtectiveDisc::Kind::DiscAtInfinity)
            fail(ErrorCode::InternalInconsistency, "second factor cone point is not at infinity");
        big_d = 1.0 / pd.radius;
    }
    return {ContainmentDomain::Kind::PuncturedDisc, d / big_d};
}

double hnn_separation_bound(HnnRow row, const Signature& s) {
    if (row == HnnRow::CuspCusp)
        fail(ErrorCode::InvalidArgument, "the separation bound concerns finite weights");
    CanonicalPair g = canonical_generators(s, hnn_base_params(row, s));
    Moebius c1 = standard_conjugator(row, s, 1.0);
    SpherePoint pb = c1.inverse()(SpherePoint::infinity());
    auto fps = fixed_points(g.B);
    SpherePoint ob = approx_equal(fps[0], pb, 1e-7) ? fps[1] : fps[0];
    cplx p = pb.value();
    auto margin = [&](double t) {
        cplx w = p * (1.0 - t);
        double centre_abs, radius;
        if (ob.is_infinity()) {
            centre_abs = std::abs(p);
            radius = std::abs(w - p);
        } else {
            cplx o = ob.value();
            double rho = std::abs(w - p) / std::abs(w - o);
            cplx centre = (p - rho * rho * o) / (1.0 - rho * rho);
            centre_abs = std::abs(centre);
            radius = rho * std::abs(p - o) / std::abs(1.0 - rho * rho);
        }
        SpherePoint image = c1(SpherePoint(w));
        if (image.is_infinity()) return 0.0;
        return (centre_abs - radius) / std::abs(image.value());
    };
    return golden_max(margin, 0.0, 1.0);
}

ContainmentDomain hnn_domain(HnnRow row, const Signature& s) {
    switch (row) {
        case HnnRow::CuspCusp: return {ContainmentDomain::Kind::HalfPlane, cusp_row_scale(s)};
        case HnnRow::General:
            return {ContainmentDomain::Kind::PuncturedDisc, (cone_distance(s).m - 1.0) / 2.0};
        default: return {ContainmentDomain::Kind::PuncturedDisc, hnn_separation_bound(row, s)};
    }
}

ContainmentDomain coordinate_domain(const GroupAssembly& g) {
    if (g.kind == CombinationKind::Afp) return afp_domain(*g.afp, g.g1.spec.nu, g.g2->spec.nu);
    return hnn_domain(*g.hnn, g.g1.spec.nu);
}

// ---------------------------------------------------------------- assemblies

std::string GroupAssembly::row_name() const {
    return kind == CombinationKind::Afp ? to_string(*afp) : to_string(*hnn);
}

std::vector<Moebius> GroupAssembly::generators() const {
    if (kind == CombinationKind::Afp) return {g1.A, g1.B, g2->B};
    return {g1.A, g1.B, *c};
}

GroupAssembly build_afp(const AfpSpec& spec) {
    AfpRow row = afp_row(spec.first, spec.second);
    GroupAssembly g;
    g.kind = CombinationKind::Afp;
    g.afp = row;
    g.weight = spec.first[0];
    g.g1 = canonical_generators(spec.first, map_triple(spec.frame, afp_first_params(row, spec.first)));
    g.g2 = canonical_generators(spec.second,
                                map_triple(spec.frame, afp_second_params(row, spec.second, spec.alpha)));
    if (psl_distance(g.g2->A, g.g1.A.inverse()) > 1e-7)
        fail(ErrorCode::SharedElementMismatch, "second factor does not share the inverse of A");
    g.shared = g.g1.A;
    g.coordinate = spec.alpha;
    g.domain = afp_domain(row, spec.first, spec.second);
    g.discreteness_certified = g.domain.contains(spec.alpha);
    return g;
}

GroupAssembly conjugate(const Moebius& t, const GroupAssembly& g) {
    GroupAssembly out = g;
    out.g1 = conjugate(t, g.g1);
    if (g.g2) out.g2 = conjugate(t, *g.g2);
    if (g.c) out.c = conjugate(t, *g.c);
    out.shared = conjugate(t, g.shared);
    return out;
}

GroupAssembly build_hnn(const HnnSpec& spec) {
    HnnRow row = hnn_row(spec.base);
    if (spec.coordinate == cplx(0.0))
        fail(ErrorCode::DegenerateTriple, "HNN coordinate must be nonzero");
    GroupAssembly g;
    g.kind = CombinationKind::Hnn;
    g.hnn = row;
    g.weight = spec.base[0];
    g.g1 = canonical_generators(spec.base, map_triple(spec.frame, hnn_base_params(row, spec.base)));
    g.c = conjugate(spec.frame, standard_conjugator(row, spec.base, spec.coordinate));
    if (psl_distance(*g.c * g.g1.B.inverse() * g.c->inverse(), g.g1.A) > 1e-7)
        fail(ErrorCode::InternalInconsistency, "conjugator does not carry B^-1 to A");
    g.shared = g.g1.A;
    g.coordinate = spec.coordinate;
    g.domain = hnn_domain(row, spec.base);
    g.discreteness_certified = g.domain.contains(spec.coordinate);
    return g;
}

cplx afp_coordinate(const GroupAssembly& g) {
    if (g.kind != CombinationKind::Afp || !g.g2) fail(ErrorCode::InvalidArgument, "not an amalgamation");
    AfpRow row = *g.afp;
    const Triple& p1 = g.g1.spec.params;
    cplx beta = cross_ratio(p1[0], p1[1], p1[2], g.g2->spec.params[2]);
    // The same cross-ratio read in the row's standard frame.
    cplx f = standard_frame_to(afp_first_params(row, g.g1.spec.nu))(SpherePoint(beta)).value();
    const Signature& s2 = g.g2->spec.nu;
    if (is_cusp_row(row)) return f + 1.0;
    if (row == AfpRow::HypHypFinite) return f * hyperbolic_frame_params(s2)[2].value();
    return f / afp_second_scale(row, s2);
}

cplx hnn_coordinate(const GroupAssembly& g) {
    if (g.kind != CombinationKind::Hnn || !g.c) fail(ErrorCode::InvalidArgument, "not an HNN extension");
    HnnRow row = *g.hnn;
    const Signature& s = g.g1.spec.nu;
    const Triple& p1 = g.g1.spec.params;
    bool probe_b = row == HnnRow::Square || row == HnnRow::Hexagonal;
    SpherePoint probe = probe_b ? p1[1] : p1[0];
    cplx beta = cross_ratio(p1[0], p1[1], p1[2], (*g.c)(probe));
    cplx f = standard_frame_to(hnn_base_params(row, s))(SpherePoint(beta)).value();
    switch (row) {
        case HnnRow::CuspCusp: return f / cusp_row_scale(s);
        case HnnRow::General: {
            SpherePoint t = standard_involution(row, s)(hnn_base_params(row, s)[0]);
            return f * t.value();
        }
        case HnnRow::Square:
        case HnnRow::Hexagonal: return f;
        case HnnRow::Tetrahedral: return -2.0 * f / 3.0;
    }
    fail(ErrorCode::InternalInconsistency, "unreachable");
}

cplx combination_coordinate(const GroupAssembly& g) {
    return g.kind == CombinationKind::Afp ? afp_coordinate(g) : hnn_coordinate(g);
}

Moebius conjugating_involution(const CanonicalPair& pair) {
    HnnRow row = hnn_row(pair.spec.nu);
    Moebius f = moebius_from_triples(hnn_base_params(row, pair.spec.nu), pair.spec.params);
    return conjugate(f, standard_involution(row, pair.spec.nu));
}

}  // namespace koebe
