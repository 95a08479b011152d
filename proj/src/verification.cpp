#include "koebe/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "koebe/error.hpp"

namespace koebe {

namespace {

Moebius power(const Moebius& m, int n) {
    Moebius r;
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

RelationCheck order_check(const std::string& name, const Moebius& m, const Ramification& nu,
                          double tol) {
    RelationCheck c;
    c.name = name;
    if (nu.is_infinite()) {
        cplx t = m.trace();
        c.residual = std::abs(t * t - 4.0);
        c.ok = c.residual < tol && classify(m).kind == ElementType::Kind::Parabolic;
    } else {
        c.residual = psl_distance(power(m, nu.order()), Moebius());
        ElementType e = classify(m);
        c.ok = c.residual < tol && e.kind == ElementType::Kind::Elliptic && e.order == nu.order();
    }
    return c;
}

RelationCheck equal_check(const std::string& name, const Moebius& a, const Moebius& b, double tol) {
    RelationCheck c;
    c.name = name;
    c.residual = psl_distance(a, b);
    c.ok = c.residual < tol;
    return c;
}

void append(RelationReport& into, const RelationReport& from, const std::string& prefix) {
    for (RelationCheck c : from.checks) {
        c.name = prefix + c.name;
        into.checks.push_back(std::move(c));
    }
}

// Position on the unit sphere, matching the chordal metric.
std::array<double, 3> sphere(const SpherePoint& p) {
    if (p.is_infinity()) return {0.0, 0.0, 1.0};
    cplx z = p.value();
    double n = std::norm(z);
    if (!std::isfinite(n)) return {0.0, 0.0, 1.0};
    return {2.0 * z.real() / (1.0 + n), 2.0 * z.imag() / (1.0 + n), (n - 1.0) / (1.0 + n)};
}

struct CellHash {
    std::size_t operator()(const std::array<long long, 3>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (long long v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

class PointSet {
public:
    explicit PointSet(double tol) : tol_(tol) {}

    // Adds p unless a stored point lies within tol.
    bool insert(const SpherePoint& p) {
        auto x = sphere(p);
        std::array<long long, 3> key;
        for (int i = 0; i < 3; ++i) key[i] = static_cast<long long>(std::floor(x[i] / tol_));
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = cells_.find({key[0] + dx, key[1] + dy, key[2] + dz});
                    if (it == cells_.end()) continue;
                    for (std::size_t idx : it->second) {
                        const auto& y = coords_[idx];
                        double d2 = 0.0;
                        for (int i = 0; i < 3; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
                        if (d2 < tol_ * tol_) return false;
                    }
                }
        cells_[key].push_back(points_.size());
        coords_.push_back(x);
        points_.push_back(p);
        return true;
    }

    std::size_t size() const { return points_.size(); }
    std::vector<SpherePoint> take() { return std::move(points_); }

private:
    double tol_;
    std::unordered_map<std::array<long long, 3>, std::vector<std::size_t>, CellHash> cells_;
    std::vector<std::array<double, 3>> coords_;
    std::vector<SpherePoint> points_;
};

bool maps_set_to_itself(const Moebius& g, const std::vector<SpherePoint>& set, double tol) {
    for (const SpherePoint& p : set) {
        SpherePoint q = g(p);
        bool hit = std::any_of(set.begin(), set.end(),
                               [&](const SpherePoint& s) { return approx_equal(q, s, tol); });
        if (!hit) return false;
    }
    return true;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 200 && b - a > 1e-14 * (1.0 + std::abs(b)); ++i) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return std::max(fc, fd);
}

CurveSeparation afp_cusp_separation(const GroupAssembly& a) {
    CurveSeparation s;
    s.method = "horoball strip";
    double h1 = protective_radii(a.g1.spec)[0].radius;
    double h2 = protective_radii(a.g2->spec)[0].radius;
    // Both charts are affine; the first is the identity in the standard frame.
    Moebius f1 = preferred_coordinate(a.g1, 0, 1, ChartRole::First).frame;
    Moebius f2 = preferred_coordinate(*a.g2, 0, 1, ChartRole::First).frame;
    cplx a1 = f1.a() / f1.d(), b1 = f1.b() / f1.d();
    cplx a2 = f2.a() / f2.d(), b2 = f2.b() / f2.d();
    if (std::abs(a1 - 1.0) > 1e-8 || std::abs(a2 + 1.0) > 1e-8) {
        s.method = "horoball strip (unexpected chart orientation)";
        s.margin = -std::numeric_limits<double>::infinity();
        return s;
    }
    // First region: Im z > h1 - Im b1. Second region: Im z < Im b2 - h2.
    double low = h1 - b1.imag();
    double high = b2.imag() - h2;
    double mid = 0.5 * (b2.imag() - b1.imag());
    // Width of the strip centred on the half-height line that clears both regions.
    s.margin = 2.0 * std::min(mid - low, high - mid);
    return s;
}

CurveSeparation afp_finite_separation(const GroupAssembly& a) {
    CurveSeparation s;
    s.method = "nested discs";
    ProtectiveDisc d1 = protective_radii(a.g1.spec)[0];
    ProtectiveDisc d2 = protective_radii(a.g2->spec)[0];
    bool centred = d1.kind == ProtectiveDisc::Kind::Disc && !d1.center.is_infinity() &&
                   std::abs(d1.center.value()) < 1e-9;
    if (!centred || d2.kind != ProtectiveDisc::Kind::DiscAtInfinity) {
        s.method = "nested discs (unexpected placement)";
        s.margin = -std::numeric_limits<double>::infinity();
        return s;
    }
    s.margin = d1.radius - 1.0 / d2.radius;
    return s;
}

CurveSeparation hnn_cusp_separation(const GroupAssembly& a) {
    CurveSeparation s;
    s.method = "paired horoballs";
    ProtectiveRadii r = protective_radii(a.g1.spec);
    double h_a = r[0].radius;
    Moebius fb = preferred_coordinate(a.g1, 1, 0, ChartRole::First).frame;
    Moebius c = *a.c;
    cplx kb = 1.0 / (fb.c() * fb.c());  // chart near 0: const - kb / z
    cplx kc = 1.0 / (c.c() * c.c());    // conjugator: a/c - kc / z
    if (std::abs(c.d()) > 1e-9 || std::abs(fb.d()) > 1e-9 || kb.real() <= 0.0 ||
        std::abs(kb.imag()) > 1e-8 * std::abs(kb) || std::abs(kc.imag()) > 1e-8 * std::abs(kc)) {
        s.method = "paired horoballs (unexpected placement)";
        s.margin = -std::numeric_limits<double>::infinity();
        return s;
    }
    // The horodisc at 0 of diameter delta is precisely invariant for
    // delta <= kb / h_b. The conjugator sends its inside below the line
    // Im = Im(a/c) - |kc| / delta, which must bound a protected horoball at
    // infinity disjoint from the disc.
    if (kc.real() > 0.0) {
        s.method = "paired horoballs (conjugator preserves orientation)";
        s.margin = -std::numeric_limits<double>::infinity();
        return s;
    }
    double base = (c.a() / c.c()).imag();
    double k = std::abs(kc);
    double delta_max = r[1].radius > 0.0 ? kb.real() / r[1].radius : 1e6;
    auto margin = [&](double delta) {
        double line = base - k / delta;
        return std::min(line - h_a, line - delta);
    };
    s.margin = golden_max(margin, 1e-12, delta_max);
    return s;
}

CurveSeparation hnn_finite_separation(const GroupAssembly& a) {
    CurveSeparation s;
    s.method = "invariant circle pairing";
    s.margin = hnn_separation_bound(*a.hnn, a.g1.spec.nu) - std::abs(a.coordinate);
    return s;
}

}  // namespace

// ---------------------------------------------------------------- relations

bool RelationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.ok; });
}

RelationReport check_triangle_relations(const CanonicalPair& pair, double tol) {
    RelationReport r;
    auto g = pair.generators();
    const char* names[3] = {"A", "B", "(AB)^-1"};
    for (int j = 0; j < 3; ++j) r.checks.push_back(order_check(names[j], g[j], pair.spec.nu[j], tol));
    r.checks.push_back(equal_check("ABC = 1", g[0] * g[1] * g[2], Moebius(), tol));
    return r;
}

RelationReport check_relations(const KoebeGroup& group, double tol) {
    RelationReport r;
    for (const Piece& p : group.pieces) {
        if (!p.pair) {
            r.checks.push_back({"P" + std::to_string(p.id) + " built", 0.0, false});
            continue;
        }
        append(r, check_triangle_relations(*p.pair, tol), "P" + std::to_string(p.id) + ": ");
    }
    for (const CurveNode& n : group.nodes) {
        std::string pre = "curve " + std::to_string(n.curve_id) + ": ";
        const GroupAssembly& a = n.assembly;
        if (a.kind == CombinationKind::Afp) {
            r.checks.push_back(equal_check(pre + "A2 = A1^-1", a.g2->A, a.g1.A.inverse(), tol));
        } else {
            r.checks.push_back(
                equal_check(pre + "C B^-1 C^-1 = A", *a.c * a.g1.B.inverse() * a.c->inverse(), a.g1.A, tol));
        }
        if (n.adjoined) {
            const Piece& p2 = group.pieces[n.piece2];
            CanonicalPair q2 = rotated_presentation(*p2.pair, n.slot2);
            r.checks.push_back(
                equal_check(pre + "C A2 C^-1 = A1^-1", conjugate(*n.adjoined, q2.A), a.g1.A.inverse(), tol));
        }
    }
    return r;
}

// ---------------------------------------------------------------- Jorgensen

bool generates_finite_group(const Moebius& x, const Moebius& y, std::size_t limit) {
    std::vector<Moebius> elems{Moebius()};
    std::vector<Moebius> gens{x, y, x.inverse(), y.inverse()};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const Moebius& g : gens) {
            Moebius m = elems[i] * g;
            bool seen = std::any_of(elems.begin(), elems.end(),
                                    [&](const Moebius& e) { return psl_distance(e, m) < 1e-7; });
            if (seen) continue;
            elems.push_back(m);
            if (elems.size() > limit) return false;
        }
    }
    return true;
}

bool elementary_pair(const Moebius& x, const Moebius& y, double tol) {
    ElementType ex = classify(x), ey = classify(y);
    if (ex.kind == ElementType::Kind::Identity || ey.kind == ElementType::Kind::Identity) return true;
    if (std::abs(commutator_trace(x, y) - 2.0) < tol) return true;
    auto fx = fixed_points(x), fy = fixed_points(y);
    if (maps_set_to_itself(y, fx, 1e-7) || maps_set_to_itself(x, fy, 1e-7)) return true;
    if (ex.kind == ElementType::Kind::Elliptic && ey.kind == ElementType::Kind::Elliptic &&
        ex.order > 0 && ey.order > 0)
        return generates_finite_group(x, y);
    return false;
}

JorgensenReport jorgensen_screen(const std::vector<Moebius>& generators,
                                 const JorgensenOptions& options) {
    JorgensenReport rep;
    std::vector<std::pair<Word, Moebius>> words;
    for_each_word(generators, options.max_word_length, [&](const Word& w, const Moebius& m) {
        words.emplace_back(w, m);
        return true;
    });
    rep.words = words.size();
    std::size_t n = words.size();
    auto test = [&](std::size_t i, std::size_t j) {
        const Moebius& x = words[i].second;
        const Moebius& y = words[j].second;
        cplx t = x.trace();
        double value = std::abs(t * t - 4.0) + std::abs(commutator_trace(x, y) - 2.0);
        ++rep.pairs_tested;
        if (value >= 1.0 - options.tol) return;
        if (elementary_pair(x, y, options.tol)) {
            ++rep.exempt;
            return;
        }
        rep.violations.push_back({words[i].first, words[j].first, value});
    };
    if (n * n <= options.budget) {
        rep.exhaustive = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) test(i, j);
        return rep;
    }
    // Generator pairs first, then a deterministic random sample.
    for (std::size_t i = 0; i < n && words[i].first.size() == 1; ++i)
        for (std::size_t j = 0; j < n && words[j].first.size() == 1; ++j)
            if (i != j) test(i, j);
    std::mt19937 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (rep.pairs_tested < options.budget) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i != j) test(i, j);
    }
    return rep;
}

// ---------------------------------------------------------------- separation

bool SeparationReport::ok() const {
    return std::all_of(curves.begin(), curves.end(), [](const CurveSeparation& c) { return c.separated; });
}

CurveSeparation separation_check(const GroupAssembly& node, int curve_id) {
    // Rebuild in the row's standard frame; the coordinate is frame free.
    GroupAssembly a;
    if (node.kind == CombinationKind::Afp)
        a = build_afp({node.g1.spec.nu, node.g2->spec.nu, combination_coordinate(node), Moebius()});
    else
        a = build_hnn({node.g1.spec.nu, combination_coordinate(node), Moebius()});
    CurveSeparation s;
    if (a.kind == CombinationKind::Afp)
        s = is_cusp_row(*a.afp) ? afp_cusp_separation(a) : afp_finite_separation(a);
    else
        s = *a.hnn == HnnRow::CuspCusp ? hnn_cusp_separation(a) : hnn_finite_separation(a);
    s.curve_id = curve_id;
    s.row = a.row_name();
    s.separated = s.margin > 0.0;
    s.in_domain = a.discreteness_certified;
    return s;
}

SeparationReport separation_check(const KoebeGroup& group) {
    SeparationReport r;
    for (const CurveNode& n : group.nodes) r.curves.push_back(separation_check(n.assembly, n.curve_id));
    return r;
}

// ---------------------------------------------------------------- limit set

LimitSetSample sample_limit_set(const std::vector<Moebius>& generators, const LimitSetOptions& options) {
    if (options.max_word_length < 0 || options.max_word_length > 12)
        fail(ErrorCode::InvalidArgument, "word length must lie in [0, 12]");
    if (!(options.dedupe > 0.0)) fail(ErrorCode::InvalidArgument, "dedupe tolerance must be positive");
    LimitSetSample out;
    PointSet pts(options.dedupe);

    // Seeds: fixed points of short non-elliptic words, which lie in the limit set.
    std::vector<SpherePoint> seeds;
    PointSet seen(options.dedupe);
    for_each_word(generators, 3, [&](const Word&, const Moebius& m) {
        ElementType e = classify(m);
        if (e.kind == ElementType::Kind::Parabolic || e.kind == ElementType::Kind::Loxodromic)
            for (const SpherePoint& p : fixed_points(m))
                if (seen.insert(p)) seeds.push_back(p);
        return true;
    });
    for (const SpherePoint& s : seeds) {
        if (pts.size() >= options.max_points) {
            out.budget_exceeded = true;
            out.points = pts.take();
            return out;
        }
        pts.insert(s);
    }

    for_each_word(generators, options.max_word_length, [&](const Word&, const Moebius& m) {
        if (++out.words_visited > options.max_words || pts.size() >= options.max_points) {
            out.budget_exceeded = true;
            return false;
        }
        for (const SpherePoint& s : seeds) {
            pts.insert(m(s));
            if (pts.size() >= options.max_points) {
                out.budget_exceeded = true;
                return false;
            }
        }
        return true;
    });
    out.points = pts.take();
    return out;
}

void write_limit_set_csv(const LimitSetSample& sample, std::ostream& out) {
    out << "re,im\n";
    out.precision(17);
    for (const SpherePoint& p : sample.points) {
        if (p.is_infinity()) out << "inf,inf\n";
        else out << p.value().real() << ',' << p.value().imag() << '\n';
    }
}

void write_limit_set_svg(const LimitSetSample& sample, std::ostream& out, int size) {
    double half = size / 2.0, scale = 0.95 * half;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale
        << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
    out << "<g fill=\"black\">\n";
    for (const SpherePoint& p : sample.points) {
        if (p.is_infinity()) continue;
        cplx z = p.value() / std::sqrt(1.0 + std::norm(p.value()));
        out << "<circle cx=\"" << half + scale * z.real() << "\" cy=\"" << half - scale * z.imag()
            << "\" r=\"0.8\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

// ---------------------------------------------------------------- summary

VerificationReport verify_group(const KoebeGroup& group, const VerifyOptions& options) {
    VerificationReport r;
    r.relations = check_relations(group, options.tol.relation);
    r.separation = separation_check(group);
    r.discreteness_certified = group.discreteness_certified();
    for (const CurveNode& n : group.nodes) {
        if (n.assembly.discreteness_certified) continue;
        std::ostringstream os;
        os << "curve " << n.curve_id << ": coordinate outside the certified domain ("
           << n.assembly.domain.describe() << "); discreteness not verified";
        r.warnings.push_back(os.str());
    }
    for (const CurveSeparation& s : r.separation.curves) {
        if (s.separated) continue;
        std::ostringstream os;
        os << "curve " << s.curve_id << ": protected regions do not separate (margin " << s.margin << ")";
        r.warnings.push_back(os.str());
    }
    if (options.run_jorgensen) {
        JorgensenOptions jo = options.jorgensen;
        jo.tol = options.tol.jorgensen;
        r.jorgensen = jorgensen_screen(group.generators, jo);
        if (!r.jorgensen.violations.empty())
            r.warnings.push_back("Jorgensen inequality fails for " +
                                 std::to_string(r.jorgensen.violations.size()) +
                                 " word pairs; the group is not discrete");
    }
    return r;
}

}  // namespace koebe
