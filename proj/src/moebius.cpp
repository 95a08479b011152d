#include "koebe/moebius.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "koebe/error.hpp"

namespace koebe {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::DegenerateTriple: return "DegenerateTriple";
        case ErrorCode::IdentityElement: return "IdentityElement";
        case ErrorCode::WrongElementType: return "WrongElementType";
        case ErrorCode::AmbiguousOrientation: return "AmbiguousOrientation";
        case ErrorCode::NotOnGeodesic: return "NotOnGeodesic";
        case ErrorCode::UnsupportedSignature: return "UnsupportedSignature";
        case ErrorCode::UnsupportedRow: return "UnsupportedRow";
        case ErrorCode::EllipticDihedralFactor: return "EllipticDihedralFactor";
        case ErrorCode::SharedElementMismatch: return "SharedElementMismatch";
        case ErrorCode::GluingOrderInvalid: return "GluingOrderInvalid";
        case ErrorCode::CoordinateOutsideOuterDomain: return "CoordinateOutsideOuterDomain";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

// ---------------------------------------------------------------- points

cplx SpherePoint::value() const {
    if (inf_) fail(ErrorCode::InvalidArgument, "finite value requested for the point at infinity");
    return z_;
}

std::string SpherePoint::to_string() const {
    if (inf_) return "inf";
    std::ostringstream os;
    os.precision(12);
    os << z_.real() << (z_.imag() < 0 ? "-" : "+") << std::abs(z_.imag()) << "i";
    return os.str();
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(q.value()));
    if (q.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(p.value()));
    cplx z = p.value(), w = q.value();
    return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

bool approx_equal(const SpherePoint& p, const SpherePoint& q, double tol) {
    return chordal_distance(p, q) < tol;
}

// ---------------------------------------------------------------- matrices

namespace {

bool flip_for_sign(cplx x) {
    double r = std::abs(x);
    if (x.real() > 1e-12 * r) return false;
    if (x.real() < -1e-12 * r) return true;
    return x.imag() < 0.0;
}

}  // namespace

Moebius::Moebius(cplx a, cplx b, cplx c, cplx d) {
    double scale = std::max({std::norm(a), std::norm(b), std::norm(c), std::norm(d)});
    cplx det = a * d - b * c;
    if (!(scale > 0.0) || std::abs(det) <= 1e-24 * scale || !std::isfinite(std::abs(det)))
        fail(ErrorCode::DegenerateTriple, "singular or non-finite matrix");
    // Already unimodular up to rounding: keep the entries so stored matrices reload exactly.
    cplx s = std::abs(det - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale)
                 ? cplx(1.0)
                 : std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
    canonicalize_sign();
}

// Products and inverses of unimodular matrices are unimodular; renormalizing
// by a computed determinant would only inject cancellation error.
Moebius Moebius::unimodular(cplx a, cplx b, cplx c, cplx d) {
    if (!std::isfinite(std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d)))
        fail(ErrorCode::DegenerateTriple, "singular or non-finite matrix");
    Moebius m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    m.canonicalize_sign();
    return m;
}

void Moebius::canonicalize_sign() {
    for (cplx x : {a_, b_, c_, d_}) {
        if (std::abs(x) > 1e-9) {
            if (flip_for_sign(x)) {
                a_ = -a_;
                b_ = -b_;
                c_ = -c_;
                d_ = -d_;
            }
            break;
        }
    }
}

Moebius Moebius::inverse() const { return unimodular(d_, -b_, -c_, a_); }

Moebius Moebius::operator*(const Moebius& o) const {
    return unimodular(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                      c_ * o.b_ + d_ * o.d_);
}

SpherePoint Moebius::apply(const SpherePoint& z) const {
    if (z.is_infinity()) {
        if (std::abs(c_) <= 1e-14 * std::abs(a_)) return SpherePoint::infinity();
        return SpherePoint(a_ / c_);
    }
    cplx w = z.value();
    cplx den = c_ * w + d_;
    if (std::abs(den) <= 1e-14 * (std::abs(c_ * w) + std::abs(d_))) return SpherePoint::infinity();
    return SpherePoint((a_ * w + b_) / den);
}

double Moebius::norm() const {
    return std::sqrt(std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_));
}

double psl_distance(const Moebius& m, const Moebius& n) {
    auto x = m.entries(), y = n.entries();
    double plus = 0, minus = 0;
    for (int i = 0; i < 4; ++i) {
        plus = std::max(plus, std::abs(x[i] - y[i]));
        minus = std::max(minus, std::abs(x[i] + y[i]));
    }
    return std::min(plus, minus);
}

bool approx_equal(const Moebius& m, const Moebius& n, double tol) {
    return psl_distance(m, n) < tol;
}

Moebius conjugate(const Moebius& t, const Moebius& m) { return t * m * t.inverse(); }

Moebius commutator(const Moebius& x, const Moebius& y) {
    return x * y * x.inverse() * y.inverse();
}

cplx commutator_trace(const Moebius& x, const Moebius& y) {
    // Plain matrix products: each entry of x and y enters twice, so signs cancel.
    cplx a = x.a(), b = x.b(), c = x.c(), d = x.d();
    cplx e = y.a(), f = y.b(), g = y.c(), h = y.d();
    cplx p11 = a * e + b * g, p12 = a * f + b * h, p21 = c * e + d * g, p22 = c * f + d * h;  // x y
    cplx q11 = d * h + b * g, q12 = -d * f - b * e, q21 = -c * h - a * g, q22 = c * f + a * e;  // x^-1 y^-1
    return p11 * q11 + p12 * q21 + p21 * q12 + p22 * q22;
}

// ---------------------------------------------------------------- cross-ratio

namespace {

void require_distinct(const SpherePoint* pts, int n, const char* what) {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (chordal_distance(pts[i], pts[j]) < 1e-12)
                fail(ErrorCode::DegenerateTriple, std::string(what) + ": coincident points " +
                                                      pts[i].to_string() + " and " +
                                                      pts[j].to_string());
}

// Difference factor with the convention that a factor containing infinity is 1.
cplx diff(const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinity() || q.is_infinity()) return 1.0;
    return p.value() - q.value();
}

}  // namespace

cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                 const SpherePoint& z4) {
    SpherePoint pts[4] = {z1, z2, z3, z4};
    require_distinct(pts, 4, "cross_ratio");
    return diff(z1, z3) * diff(z2, z4) / (diff(z1, z4) * diff(z2, z3));
}

Moebius standard_frame_to(const Triple& t) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (chordal_distance(t[i], t[j]) < kTol)
                fail(ErrorCode::DegenerateTriple,
                     "triple points coincide: " + t[i].to_string() + ", " + t[j].to_string());
    // z -> cr(a, b, c, z) sends (a, b, c) to (inf, 0, 1); we return its inverse.
    const SpherePoint &a = t[0], &b = t[1], &c = t[2];
    Moebius s;
    if (a.is_infinity()) {
        s = Moebius(-1.0, b.value(), 0.0, b.value() - c.value());
    } else if (b.is_infinity()) {
        s = Moebius(0.0, a.value() - c.value(), -1.0, a.value());
    } else if (c.is_infinity()) {
        s = Moebius(-1.0, b.value(), -1.0, a.value());
    } else {
        cplx av = a.value(), bv = b.value(), cv = c.value();
        s = Moebius(-(av - cv), (av - cv) * bv, -(bv - cv), (bv - cv) * av);
    }
    return s.inverse();
}

Moebius moebius_from_triples(const Triple& src, const Triple& dst) {
    return standard_frame_to(dst) * standard_frame_to(src).inverse();
}

Triple map_triple(const Moebius& m, const Triple& t) { return {m(t[0]), m(t[1]), m(t[2])}; }

// ---------------------------------------------------------------- classification

std::string ElementType::to_string() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Parabolic: return "parabolic";
        case Kind::Loxodromic: return "loxodromic";
        case Kind::Elliptic:
            return order == 0 ? "elliptic(irrational)" : "elliptic(" + std::to_string(order) + ")";
    }
    return "?";
}

std::pair<long, long> recognize_rational(double x, long max_den, double tol) {
    for (long den = 1; den <= max_den; ++den) {
        long num = std::lround(x * static_cast<double>(den));
        if (std::abs(x - static_cast<double>(num) / static_cast<double>(den)) < tol)
            return {num, den};
    }
    return {0, 0};
}

ElementType classify(const Moebius& m, double tol) {
    double scale = std::max(1.0, m.norm());
    if (std::abs(m.b()) < tol * scale && std::abs(m.c()) < tol * scale &&
        std::abs(m.a() - m.d()) < tol * scale)
        return {ElementType::Kind::Identity, 0};
    cplx t2 = m.trace() * m.trace();
    double ttol = tol * scale * scale;
    if (std::abs(t2 - 4.0) < ttol) return {ElementType::Kind::Parabolic, 0};
    if (std::abs(t2.imag()) < ttol && t2.real() > -ttol && t2.real() < 4.0) {
        double c2 = std::clamp(t2.real() / 4.0, 0.0, 1.0);
        double fraction = std::acos(std::sqrt(c2)) / M_PI;  // rotation angle / 2pi
        auto [num, den] = recognize_rational(fraction, 1000, 1e-9);
        (void)num;
        return {ElementType::Kind::Elliptic, static_cast<int>(den)};
    }
    return {ElementType::Kind::Loxodromic, 0};
}

std::vector<SpherePoint> fixed_points(const Moebius& m, double tol) {
    ElementType et = classify(m, tol);
    if (et.kind == ElementType::Kind::Identity)
        fail(ErrorCode::IdentityElement, "identity has no isolated fixed points");
    cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    double scale = std::max(1.0, m.norm());
    bool parabolic = et.kind == ElementType::Kind::Parabolic;
    if (std::abs(c) < 1e-14 * scale) {
        if (parabolic) return {SpherePoint::infinity()};
        return {SpherePoint::infinity(), SpherePoint(b / (d - a))};
    }
    if (parabolic) return {SpherePoint((a - d) / (2.0 * c))};
    // Roots of c z^2 + (d - a) z - b = 0, in the cancellation-free form.
    cplx disc = std::sqrt(m.trace() * m.trace() - 4.0);
    cplx w = a - d;
    cplx q = std::abs(w + disc) >= std::abs(w - disc) ? w + disc : w - disc;
    SpherePoint first(q / (2.0 * c));
    SpherePoint second = std::abs(q) > 0.0 ? SpherePoint(-2.0 * b / q) : SpherePoint(-q / (2.0 * c));
    return {first, second};
}

RightLeft right_left_fixed_points(const Moebius& m, double tol) {
    ElementType et = classify(m, tol);
    if (et.kind != ElementType::Kind::Elliptic || et.order == 2)
        fail(ErrorCode::WrongElementType,
             "right/left fixed points need an elliptic element of order > 2, got " +
                 et.to_string());
    auto fp = fixed_points(m, tol);
    if (fp.size() != 2) fail(ErrorCode::InternalInconsistency, "elliptic element with one fixed point");
    static const cplx probes[] = {{0.3, 0.7}, {-1.1, 0.4}, {2.3, -1.7}, {0.5, 0.0},
                                  {0.0, -3.0}, {10.0, 10.0}, {-0.2, -0.05}};
    double best = 0.0;
    for (cplx z : probes) {
        SpherePoint p(z);
        if (chordal_distance(p, fp[0]) < 1e-3 || chordal_distance(p, fp[1]) < 1e-3) continue;
        SpherePoint p1 = m(p), p2 = m(p1);
        double v = cross_ratio(fp[0], p, p1, p2).imag();
        if (std::abs(v) > std::abs(best)) best = v;
    }
    if (std::abs(best) < tol) fail(ErrorCode::AmbiguousOrientation, "rotation sense undetermined");
    return best > 0 ? RightLeft{fp[0], fp[1]} : RightLeft{fp[1], fp[0]};
}

bool is_geometric_primitive(const Moebius& m, int n, double tol) {
    if (classify(m, tol).kind != ElementType::Kind::Elliptic)
        fail(ErrorCode::WrongElementType, "geometric primitivity is defined for elliptic elements");
    double q = std::cos(M_PI / n);
    return std::abs(m.trace() * m.trace() - 4.0 * q * q) < tol;
}

// ---------------------------------------------------------------- conjugators

namespace {

using Mat84 = Eigen::Matrix<cplx, 8, 4>;
using Entries = std::array<cplx, 4>;

// Rows of the linear map T -> T x0 - x T on the unknowns (t00, t01, t10, t11).
void fill_block(Mat84& sys, int row, const Entries& x0, const Entries& x) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            int r = row + 2 * i + j;
            for (int k = 0; k < 4; ++k) sys(r, k) = 0.0;
            for (int k = 0; k < 2; ++k) {
                sys(r, 2 * i + k) += x0[2 * k + j];
                sys(r, 2 * k + j) -= x[2 * i + k];
            }
        }
}

Entries scaled(const Moebius& m, double s) {
    return {s * m.a(), s * m.b(), s * m.c(), s * m.d()};
}

}  // namespace

Moebius solve_conjugator(const Moebius& x0, const Moebius& y0, const Moebius& x,
                         const Moebius& y) {
    // Targets are only defined up to sign, so try all four lifts and keep the
    // one with the clearest one-dimensional null space.
    double best_sv = std::numeric_limits<double>::infinity();
    Eigen::Matrix<cplx, 4, 1> best;
    for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0}) {
            Mat84 sys;
            fill_block(sys, 0, x0.entries(), scaled(x, sx));
            fill_block(sys, 4, y0.entries(), scaled(y, sy));
            Eigen::JacobiSVD<Mat84> svd(sys, Eigen::ComputeFullV);
            double sv = svd.singularValues()(3) / std::max(1.0, svd.singularValues()(0));
            if (sv < best_sv) {
                best_sv = sv;
                best = svd.matrixV().col(3);
            }
        }
    cplx det = best(0) * best(3) - best(1) * best(2);
    if (best_sv > 1e-7 || std::abs(det) < 1e-12)
        fail(ErrorCode::InternalInconsistency, "generator pairs are not simultaneously conjugate");
    Moebius t(best(0), best(1), best(2), best(3));
    if (psl_distance(conjugate(t, x0), x) > 1e-7 || psl_distance(conjugate(t, y0), y) > 1e-7)
        fail(ErrorCode::InternalInconsistency, "conjugator residual too large");
    return t;
}

}  // namespace koebe
