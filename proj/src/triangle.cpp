#include "koebe/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "koebe/error.hpp"
#include "koebe/words.hpp"

namespace koebe {

namespace {

const cplx I(0.0, 1.0);

// Closed-form matrices are built with det 1; a mismatch means a formula or
// branch error, not bad input.
Moebius exact(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    if (std::abs(det - 1.0) > 1e-9)
        fail(ErrorCode::InternalInconsistency, "closed-form generator has det != 1");
    return Moebius(a, b, c, d);
}

bool order_matches(const Moebius& m, const Ramification& nu) {
    ElementType et = classify(m);
    if (nu.is_infinite()) return et.kind == ElementType::Kind::Parabolic;
    return et.kind == ElementType::Kind::Elliptic && et.order == nu.order() &&
           is_geometric_primitive(m, nu.order());
}

// Im of the normalized position: positive exactly on Delta.
double delta_side(const Triple& abc, const SpherePoint& z) {
    SpherePoint w = standard_frame_to(abc).inverse()(z);
    if (w.is_infinity()) return 0.0;
    return w.value().imag();
}

struct StandardPair {
    Construction construction;
    Moebius A, B;
    std::optional<double> k, h, l;
};

StandardPair hyperbolic_standard(const Signature& nu) {
    double q1 = nu[0].q(), q2 = nu[1].q(), q3 = nu[2].q();
    double p1 = nu[0].p(), p2 = nu[1].p();
    if (nu[0].is_infinite()) {
        double b = (q2 * q2 - 1.0) / (q2 + q3);
        return {Construction::HyperbolicCusp, exact(-1.0, -2.0, 0.0, -1.0),
                exact(-q2, b, q2 + q3, -q2), {}, {}, {}};
    }
    double l = std::sqrt(q1 * q1 + q2 * q2 + q3 * q3 + 2.0 * q1 * q2 * q3 - 1.0);
    double k = (q2 + q1 * q3 + q1 * l) / (p1 * l);
    double g = q1 * q2 + q3 + l;
    double h = k * p1 * p2 / g;
    // B written as [-q2, -k p1 p2^2/g; g/(k p1), -q2], which equals the
    // [-q2, -h p2; p2/h, -q2] form and stays finite when p2 = 0.
    return {Construction::HyperbolicFinite, exact(-q1, -k * p1, p1 / k, -q1),
            exact(-q2, -k * p1 * p2 * p2 / g, g / (k * p1), -q2), k, h, l};
}

StandardPair parabolic_standard(const Signature& nu) {
    if (nu[0].is_infinite())
        return {Construction::ParabolicCusp, exact(1.0, 2.0, 0.0, 1.0), exact(I, 0.0, 0.0, -I),
                {}, {}, {}};
    // A rotates about 0, B rotates about 1 by the angle that makes AB a
    // primitive rotation of order nu3.
    cplx lam = std::polar(1.0, M_PI / nu[0].order());
    Moebius A = exact(lam, 0.0, 0.0, 1.0 / lam);
    std::vector<Moebius> hits;
    for (double sign : {1.0, -1.0}) {
        cplx mu = std::polar(1.0, sign * 2.0 * M_PI / nu[1].order());
        cplx s = std::sqrt(mu);
        Moebius B = exact(s, (1.0 - mu) / s, 0.0, 1.0 / s);
        if (order_matches(B, nu[1]) && order_matches(A * B, nu[2])) {
            bool seen = std::any_of(hits.begin(), hits.end(),
                                    [&](const Moebius& h) { return approx_equal(h, B); });
            if (!seen) hits.push_back(B);
        }
    }
    if (hits.size() != 1)
        fail(ErrorCode::InternalInconsistency,
             "rotation sense of B not determined for " + signature_string(nu));
    return {Construction::ParabolicFinite, A, hits.front(), {}, {}, {}};
}

StandardPair elliptic_standard(const Signature& nu) {
    int n1 = nu[0].order();
    cplx lam = std::polar(1.0, M_PI / n1);
    Moebius A = exact(lam, 0.0, 0.0, std::conj(lam));
    if (nu[1].is(2) && nu[2].is(2))
        return {Construction::EllipticDihedral, A, exact(0.0, I, I, 0.0), {}, {}, {}};
    if (!nu[2].is(2) || nu[1].is(2))
        fail(ErrorCode::UnsupportedSignature,
             "elliptic signature " + signature_string(nu) + " needs the value 2 in the last slot");
    double q2 = nu[1].q(), p2 = nu[1].p(), p1 = nu[0].p();
    cplx a = -I * q2 * std::conj(lam) / p1;
    cplx d = -lam * lam * a;
    // B has trace -2 q2; of the two square-root branches the right one makes
    // 1 the right fixed point of B.
    for (double s : {1.0, -1.0}) {
        cplx b = -q2 - a - s * I * p2;
        cplx c = q2 + a - s * I * p2;
        Moebius B = exact(a, b, c, d);
        if (approx_equal(right_left_fixed_points(B).right, SpherePoint(1.0)))
            return {Construction::EllipticGeneric, A, B, {}, {}, {}};
    }
    fail(ErrorCode::InternalInconsistency, "no branch puts the right fixed point of B at 1");
}

StandardPair standard_pair(const Signature& nu) {
    switch (signature_class(nu)) {
        case SignatureClass::Hyperbolic: return hyperbolic_standard(nu);
        case SignatureClass::Parabolic: return parabolic_standard(nu);
        case SignatureClass::Elliptic: return elliptic_standard(nu);
    }
    fail(ErrorCode::InternalInconsistency, "unreachable");
}

}  // namespace

// ---------------------------------------------------------------- signatures

Ramification::Ramification(int order) : order_(order) {
    if (order < 2) fail(ErrorCode::InvalidArgument, "ramification values are >= 2 or infinite");
}

int Ramification::order() const {
    if (is_infinite()) fail(ErrorCode::InvalidArgument, "infinite ramification has no finite order");
    return order_;
}

double Ramification::q() const { return is_infinite() ? 1.0 : std::cos(M_PI / order_); }
double Ramification::p() const { return is_infinite() ? 0.0 : std::sin(M_PI / order_); }
std::string Ramification::to_string() const {
    return is_infinite() ? "inf" : std::to_string(order_);
}

const char* to_string(SignatureClass c) {
    switch (c) {
        case SignatureClass::Hyperbolic: return "hyperbolic";
        case SignatureClass::Parabolic: return "parabolic";
        case SignatureClass::Elliptic: return "elliptic";
    }
    return "?";
}

SignatureClass signature_class(const Signature& nu) {
    // Compare the sum of reciprocals with 1 exactly, in integers.
    long long num = 0, den = 1;
    for (const Ramification& r : nu) {
        if (r.is_infinite()) continue;
        long long n = r.order();
        num = num * n + den;
        den *= n;
    }
    if (num < den) return SignatureClass::Hyperbolic;
    if (num == den) return SignatureClass::Parabolic;
    return SignatureClass::Elliptic;
}

std::string signature_string(const Signature& nu) {
    return "(" + nu[0].to_string() + "," + nu[1].to_string() + "," + nu[2].to_string() + ")";
}

Signature rotate(const Signature& nu, int slot) {
    return {nu[slot % 3], nu[(slot + 1) % 3], nu[(slot + 2) % 3]};
}

void TriangleSpec::validate() const {
    if (!nu[0].is_infinite() && nu[0].order() <= 2)
        fail(ErrorCode::UnsupportedSignature, "the first ramification value must exceed 2");
    standard_frame_to(params);  // throws on coincident parameters
}

const char* to_string(Construction c) {
    switch (c) {
        case Construction::HyperbolicCusp: return "hyperbolic-cusp";
        case Construction::HyperbolicFinite: return "hyperbolic-finite";
        case Construction::ParabolicCusp: return "parabolic-cusp";
        case Construction::ParabolicFinite: return "parabolic-finite";
        case Construction::EllipticDihedral: return "elliptic-dihedral";
        case Construction::EllipticGeneric: return "elliptic";
    }
    return "?";
}

// ---------------------------------------------------------------- generators

std::array<Moebius, 3> CanonicalPair::generators() const { return {A, B, (A * B).inverse()}; }

Triple standard_params() { return {SpherePoint::infinity(), SpherePoint(0.0), SpherePoint(1.0)}; }

CanonicalPair canonical_generators(const TriangleSpec& spec) {
    spec.validate();
    StandardPair sp = standard_pair(spec.nu);
    CanonicalPair out;
    out.spec = spec;
    out.construction = sp.construction;
    out.frame = standard_frame_to(spec.params);
    out.A = conjugate(out.frame, sp.A);
    out.B = conjugate(out.frame, sp.B);
    for (int i = 0; i < 3; ++i) {
        out.q[i] = spec.nu[i].q();
        out.p[i] = spec.nu[i].p();
    }
    out.k = sp.k;
    out.h = sp.h;
    out.l = sp.l;
    if (sp.construction == Construction::EllipticDihedral) {
        out.non_unique = true;
        out.alternate_fourth = out.frame(SpherePoint(-1.0));
    }
    return out;
}

CanonicalPair conjugate(const Moebius& t, const CanonicalPair& pair) {
    CanonicalPair out = pair;
    out.spec.params = map_triple(t, pair.spec.params);
    out.A = conjugate(t, pair.A);
    out.B = conjugate(t, pair.B);
    out.frame = t * pair.frame;
    if (pair.alternate_fourth) out.alternate_fourth = t(*pair.alternate_fourth);
    return out;
}

CanonicalPair canonical_generators(const Signature& nu, const Triple& params) {
    return canonical_generators(TriangleSpec{nu, params});
}

Triple hyperbolic_frame_params(const Signature& nu) {
    if (signature_class(nu) != SignatureClass::Hyperbolic || nu[0].is_infinite())
        fail(ErrorCode::UnsupportedSignature,
             "the disc frame needs a hyperbolic signature with finite first value");
    double k = *hyperbolic_standard(nu).k;
    return {SpherePoint(-1.0), SpherePoint(1.0), SpherePoint(cplx(-1.0, k) / cplx(1.0, k))};
}

CanonicalPair rotated_presentation(const CanonicalPair& base, int slot) {
    slot %= 3;
    if (slot == 0) return base;
    auto g = base.generators();
    Signature nu = rotate(base.spec.nu, slot);
    if (!nu[0].is_infinite() && nu[0].order() <= 2)
        fail(ErrorCode::UnsupportedSignature,
             "rotated signature " + signature_string(nu) + " starts with 2");
    StandardPair sp = standard_pair(nu);
    Moebius t = solve_conjugator(sp.A, sp.B, g[slot], g[(slot + 1) % 3]);
    CanonicalPair out = canonical_generators(nu, map_triple(t, standard_params()));
    if (psl_distance(out.A, g[slot]) > 1e-7 || psl_distance(out.B, g[(slot + 1) % 3]) > 1e-7)
        fail(ErrorCode::InternalInconsistency, "rotated presentation does not reproduce generators");
    return out;
}

HyperbolicDistance cone_distance(const Signature& nu) {
    if (signature_class(nu) != SignatureClass::Hyperbolic || nu[0].is_infinite() ||
        nu[1].is_infinite())
        fail(ErrorCode::UnsupportedSignature, "cone distance needs finite nu1, nu2 in a hyperbolic group");
    StandardPair sp = hyperbolic_standard(nu);
    double d = std::log(*sp.k / *sp.h);
    return {d, std::cosh(d), std::sinh(d)};
}

// ---------------------------------------------------------------- ordering

bool well_ordered(const SpherePoint& z1, const SpherePoint& z2, const Triple& abc) {
    Moebius s = standard_frame_to(abc).inverse();
    SpherePoint w1 = s(z1), w2 = s(z2);
    for (const SpherePoint& w : {w1, w2}) {
        if (w.is_infinity()) continue;
        cplx v = w.value();
        double scale = std::max(1.0, std::abs(v));
        if (std::abs(v.real()) > 1e-9 * scale || v.imag() < -1e-9 * scale)
            fail(ErrorCode::NotOnGeodesic, "point " + w.to_string() + " is off the closed geodesic");
    }
    if (w1.is_infinity()) return true;
    if (approx_equal(w2, SpherePoint(0.0))) return true;
    if (w2.is_infinity() || approx_equal(w1, w2, 1e-12)) return false;
    cplx r = cross_ratio(SpherePoint::infinity(), w1, w2, SpherePoint(0.0));
    return r.real() > 1.0;
}

RevisitedReport revisited_characterizations(const Moebius& A, const Moebius& B,
                                            const TriangleSpec& spec) {
    Moebius s = standard_frame_to(spec.params).inverse();
    auto on_line = [&](const SpherePoint& z, double re) {
        SpherePoint w = s(z);
        if (w.is_infinity()) return true;
        return std::abs(w.value().real() - re) < 1e-8 * std::max(1.0, std::abs(w.value()));
    };
    bool lines = true;
    for (const SpherePoint& z : fixed_points(A)) lines = lines && on_line(z, 0.0);
    for (const SpherePoint& z : fixed_points(B)) lines = lines && on_line(z, 0.0);
    for (const SpherePoint& z : fixed_points(A * B)) lines = lines && on_line(z, 1.0);

    RevisitedReport rep{false, false};
    if (!lines) return rep;

    auto in_closed_delta = [&](const Moebius& m) {
        std::optional<SpherePoint> best;
        double best_im = -std::numeric_limits<double>::infinity();
        for (const SpherePoint& z : fixed_points(m)) {
            SpherePoint w = s(z);
            double im = w.is_infinity() ? 0.0 : w.value().imag();
            if (im > best_im) {
                best_im = im;
                best = z;
            }
        }
        return *best;
    };
    try {
        rep.ordering_accepts = well_ordered(in_closed_delta(A), in_closed_delta(B), spec.params);
    } catch (const Error&) {
        rep.ordering_accepts = false;
    }
    SpherePoint left = right_left_fixed_points(A).left;
    rep.right_left_accepts = delta_side(spec.params, left) > 1e-9;
    return rep;
}

bool hyperbolic_revisited_check(const CanonicalPair& pair, const TriangleSpec& spec) {
    RevisitedReport r = revisited_characterizations(pair.A, pair.B, spec);
    return r.ordering_accepts && r.right_left_accepts;
}

// ---------------------------------------------------------------- charts

const char* to_string(PreferredCoordinate::Kind k) {
    switch (k) {
        case PreferredCoordinate::Kind::Cusp: return "cusp";
        case PreferredCoordinate::Kind::FiniteAtZero: return "finite-at-zero";
        case PreferredCoordinate::Kind::FiniteAtInfinity: return "finite-at-infinity";
    }
    return "?";
}

namespace {

cplx ipow(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

}  // namespace

cplx PreferredCoordinate::evaluate(const SpherePoint& xi) const {
    SpherePoint w = frame(xi);
    switch (kind) {
        case Kind::Cusp: return std::exp(I * M_PI * w.value());
        case Kind::FiniteAtZero: return ipow(w.value(), exponent);
        case Kind::FiniteAtInfinity: return ipow(1.0 / w.value(), exponent);
    }
    return 0.0;
}

SpherePoint marked_point_lift(const CanonicalPair& pair, int slot) {
    const Moebius g = pair.generators()[slot];
    const Triple& abc = pair.spec.params;
    auto fp = fixed_points(g);
    if (fp.size() == 1) return fp[0];
    if (pair.spec.group_class() == SignatureClass::Hyperbolic)
        return delta_side(abc, fp[0]) > delta_side(abc, fp[1]) ? fp[0] : fp[1];
    // Elementary groups: skip the parameter a when it is fixed, since it is
    // the limit point (Euclidean case) or the other pole of A.
    std::vector<SpherePoint> cand;
    for (const SpherePoint& z : fp)
        if (!approx_equal(z, abc[0], 1e-7)) cand.push_back(z);
    if (cand.size() == 1) return cand[0];
    if (classify(g).order != 2) return right_left_fixed_points(g).right;
    for (const SpherePoint& z : cand)
        if (approx_equal(z, abc[2], 1e-7)) return z;
    return delta_side(abc, cand[0]) >= delta_side(abc, cand[1]) - 1e-12 ? cand[0] : cand[1];
}

PreferredCoordinate preferred_coordinate(const CanonicalPair& pair, int at, int relative_to,
                                         ChartRole role) {
    if (at < 0 || at > 2 || relative_to < 0 || relative_to > 2 || at == relative_to)
        fail(ErrorCode::InvalidArgument, "chart needs two distinct marked points");
    const Moebius g = pair.generators()[at];
    const Ramification nu = pair.spec.nu[at];
    const bool hyperbolic = pair.spec.group_class() == SignatureClass::Hyperbolic;
    SpherePoint base = marked_point_lift(pair, at);
    SpherePoint rel = marked_point_lift(pair, relative_to);

    PreferredCoordinate pc;
    pc.base = base;
    if (nu.is_infinite()) {
        pc.kind = PreferredCoordinate::Kind::Cusp;
        pc.exponent = 1;
        Moebius f = base.is_infinity() ? Moebius() : Moebius(0.0, 1.0, 1.0, -base.value());
        Moebius tr = conjugate(f, g);  // a translation z -> z + t
        cplx t = tr.b() / tr.d();
        f = Moebius(2.0 / t, 0.0, 0.0, 1.0) * f;
        cplx shift;
        if (hyperbolic) {
            // Put the limit circle on the real axis, then the lift of the
            // other marked point on the imaginary axis.
            SpherePoint on_circle = approx_equal(pair.spec.params[0], base, 1e-7)
                                        ? pair.spec.params[1]
                                        : pair.spec.params[0];
            double y0 = f(on_circle).value().imag();
            SpherePoint r = f(rel);
            double x0 = r.is_infinity() ? 0.0 : r.value().real();
            shift = cplx(x0, y0);
        } else {
            shift = f(rel).value();
        }
        pc.frame = Moebius(1.0, -shift, 0.0, 1.0) * f;
        return pc;
    }

    pc.exponent = nu.order();
    Moebius f;
    if (hyperbolic) {
        Moebius s = standard_frame_to(pair.spec.params).inverse();
        cplx w0 = s(base).value();
        f = Moebius(1.0, -w0, 1.0, -std::conj(w0)) * s;  // Delta -> unit disc, base -> 0
    } else {
        SpherePoint other = approx_equal(fixed_points(g)[0], base, 1e-7) ? fixed_points(g)[1]
                                                                        : fixed_points(g)[0];
        f = moebius_from_triples({other, base, rel}, standard_params());
    }
    SpherePoint r = f(rel);
    if (hyperbolic && !r.is_infinity() && std::abs(r.value()) > 0.0) {
        cplx u = std::polar(1.0, -std::arg(r.value()));
        f = Moebius(u, 0.0, 0.0, 1.0) * f;
    }
    if (role == ChartRole::First) {
        pc.kind = PreferredCoordinate::Kind::FiniteAtZero;
        pc.frame = f;
    } else {
        pc.kind = PreferredCoordinate::Kind::FiniteAtInfinity;
        pc.frame = Moebius(0.0, 1.0, 1.0, 0.0) * f;
    }
    return pc;
}

PreferredCoordinate preferred_coordinate(const TriangleSpec& spec, int at, int relative_to,
                                         ChartRole role) {
    return preferred_coordinate(canonical_generators(spec), at, relative_to, role);
}

// ---------------------------------------------------------------- radii

ProtectiveRadii protective_radii(const TriangleSpec& spec, int max_word_length) {
    CanonicalPair pair = canonical_generators(spec);
    std::vector<Moebius> gens = {pair.A, pair.B};
    ProtectiveRadii out{};
    for (int j = 0; j < 3; ++j) {
        SpherePoint p = marked_point_lift(pair, j);
        if (spec.nu[j].is_infinite()) {
            // Horoball height in the cusp frame: max over 1/|c| for elements
            // that move the cusp.
            int other = j == 0 ? 1 : 0;
            Moebius f = preferred_coordinate(pair, j, other).frame;
            double h = 0.0;
            for_each_word(gens, max_word_length, [&](const Word&, const Moebius& w) {
                Moebius m = conjugate(f, w);
                double c = std::abs(m.c());
                if (c > 1e-9) h = std::max(h, 1.0 / c);
                return true;
            });
            out[j] = {ProtectiveDisc::Kind::Horodisc, p, h};
            continue;
        }
        // Distances are measured in z, or in 1/z when the lift is infinity.
        auto coord = [&](const SpherePoint& z) -> std::optional<cplx> {
            if (p.is_infinity()) {
                if (z.is_infinity()) return cplx(0.0);
                if (std::abs(z.value()) < 1e-300) return std::nullopt;
                return 1.0 / z.value();
            }
            if (z.is_infinity()) return std::nullopt;
            return z.value();
        };
        cplx center = *coord(p);
        double best = std::numeric_limits<double>::infinity();
        for_each_word(gens, max_word_length, [&](const Word&, const Moebius& w) {
            SpherePoint image = w(p);
            if (approx_equal(image, p)) return true;  // stabilizer
            if (auto v = coord(image)) best = std::min(best, std::abs(*v - center));
            return true;
        });
        out[j] = {p.is_infinity() ? ProtectiveDisc::Kind::DiscAtInfinity : ProtectiveDisc::Kind::Disc,
                  p, 0.5 * best};
    }
    return out;
}

}  // namespace koebe
