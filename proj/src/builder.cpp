#include "koebe/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "koebe/error.hpp"

namespace koebe {

namespace {

const cplx I(0.0, 1.0);

// Diagnostics name the partition entry as well as the curve id.
std::string curve_label(int index, int id) {
    return "partition[" + std::to_string(index) + "] (curve " + std::to_string(id) + ")";
}

// Ordering key for multiset comparisons of slot references.
std::pair<int, int> slot_key(const SlotRef& s) {
    if (s.kind == SlotRef::Kind::Curve) return {1, s.curve};
    return {0, s.nu.is_infinite() ? 0 : s.nu.order()};
}

bool same_multiset(std::vector<SlotRef> a, std::vector<SlotRef> b) {
    auto less = [](const SlotRef& x, const SlotRef& y) { return slot_key(x) < slot_key(y); };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    return a == b;
}

Ramification slot_nu(const OrbifoldSpec& spec, const SlotRef& s) {
    if (s.kind == SlotRef::Kind::Point) return s.nu;
    for (const CurveSpec& c : spec.curves)
        if (c.id == s.curve) return c.weight;
    fail(ErrorCode::InvalidArgument, "unknown curve id " + std::to_string(s.curve));
}

double reciprocal(const Ramification& r) { return r.is_infinite() ? 0.0 : 1.0 / r.order(); }

struct Builder {
    const OrbifoldSpec& spec;
    KoebeGroup g;
    std::vector<int> created_at;  // node index that created each piece

    explicit Builder(const OrbifoldSpec& s) : spec(s) {}

    // Piece holding an unbound end of `curve` whose other two slots match `side`.
    // Returns {piece, slot} or {-1, -1}.
    std::pair<int, int> find_side(const std::vector<SlotRef>& side, int curve, int label,
                                  int exclude = -1) {
        SlotRef end = SlotRef::curve_end(curve);
        for (const Piece& p : g.pieces) {
            if (p.id == exclude) continue;
            if (label >= 0 && p.label >= 0 && p.label != label) continue;
            for (int s = 0; s < 3; ++s) {
                if (!(p.slots[s] == end) || p.bound[s]) continue;
                if (same_multiset({p.slots[(s + 1) % 3], p.slots[(s + 2) % 3]}, side))
                    return {p.id, s};
            }
        }
        return {-1, -1};
    }

    int new_piece(std::array<SlotRef, 3> slots, int label) {
        // Elliptic pieces need the order-2 point last.
        Signature sig{slot_nu(spec, slots[0]), slot_nu(spec, slots[1]), slot_nu(spec, slots[2])};
        if (signature_class(sig) == SignatureClass::Elliptic && sig[1].is(2) && !sig[2].is(2))
            std::swap(slots[1], slots[2]);
        for (int s = 1; s < 3; ++s) {
            if (slots[s].kind != SlotRef::Kind::Curve || slots[s].curve == slots[0].curve) continue;
            for (const CurveNode& n : g.nodes)
                if (n.curve_id == slots[s].curve)
                    fail(ErrorCode::GluingOrderInvalid,
                         "side references curve " + std::to_string(slots[s].curve) +
                             ", which is glued already but no piece carries a matching end");
        }
        Piece p;
        p.id = static_cast<int>(g.pieces.size());
        p.label = label;
        p.slots = slots;
        for (int s = 0; s < 3; ++s) p.bound[s] = slots[s].kind == SlotRef::Kind::Point;
        g.pieces.push_back(p);
        created_at.push_back(static_cast<int>(g.nodes.size()));
        return p.id;
    }

    void check_outer(const CurveSpec& c, cplx alpha) {
        if (c.weight.is_infinite()) {
            if (!(alpha.imag() > 0.0))
                fail(ErrorCode::CoordinateOutsideOuterDomain,
                     "infinite weight needs Im > 0");
        } else if (!(std::abs(alpha) < 1.0) || alpha == cplx(0.0)) {
            fail(ErrorCode::CoordinateOutsideOuterDomain,
                 "finite weight needs 0 < |coordinate| < 1");
        }
    }

    void check_coordinate(const GroupAssembly& a, cplx alpha) {
        cplx back = combination_coordinate(a);
        if (std::abs(back - alpha) > 1e-8 * std::max(1.0, std::abs(alpha)))
            fail(ErrorCode::InternalInconsistency,
                 "coordinate does not survive the construction");
    }

    void four_holed(int index, cplx alpha) {
        const CurveSpec& c = spec.curves[index];
        std::array<std::vector<SlotRef>, 2> sides{
            std::vector<SlotRef>{c.boundary[0], c.boundary[1]},
            std::vector<SlotRef>{c.boundary[2], c.boundary[3]}};
        int first = c.orientation ? 0 : 1;
        std::array<int, 2> piece{-1, -1}, slot{-1, -1};
        for (int k = 0; k < 2; ++k) {
            int label = c.pants ? (*c.pants)[k] : -1;
            auto [p, s] = find_side(sides[k], c.id, label, k == 1 ? piece[0] : -1);
            piece[k] = p;
            slot[k] = s;
        }
        CurveNode node;
        node.curve_index = index;
        node.curve_id = c.id;
        int built = (piece[0] >= 0) + (piece[1] >= 0);
        if (built == 0 && !g.pieces.empty())
            fail(ErrorCode::GluingOrderInvalid,
                 "the curve does not attach to the pieces built so far");
        node.step = built == 0 ? "initial" : built == 1 ? "case1" : "case2";

        for (int k = 0; k < 2; ++k) {
            if (piece[k] >= 0) continue;
            int label = c.pants ? (*c.pants)[k] : -1;
            piece[k] = new_piece({SlotRef::curve_end(c.id), sides[k][0], sides[k][1]}, label);
            slot[k] = 0;
        }
        int second = 1 - first;
        Piece& p1 = g.pieces[piece[first]];
        Piece& p2 = g.pieces[piece[second]];
        int r1 = slot[first], r2 = slot[second];
        Signature s1 = rotate(p1.signature(spec), r1);
        Signature s2 = rotate(p2.signature(spec), r2);
        AfpRow row = afp_row(s1, s2);

        Moebius t;
        if (p1.pair) {
            CanonicalPair q1 = rotated_presentation(*p1.pair, r1);
            t = moebius_from_triples(afp_first_params(row, s1), q1.spec.params);
        } else if (p2.pair) {
            CanonicalPair q2 = rotated_presentation(*p2.pair, r2);
            t = moebius_from_triples(afp_second_params(row, s2, alpha), q2.spec.params);
        }
        node.assembly = build_afp({s1, s2, alpha, t});

        if (p1.pair && p2.pair) {
            CanonicalPair q2 = rotated_presentation(*p2.pair, r2);
            Moebius adj = moebius_from_triples(q2.spec.params, node.assembly.g2->spec.params);
            if (psl_distance(conjugate(adj, q2.A), node.assembly.g1.A.inverse()) > 1e-7)
                fail(ErrorCode::SharedElementMismatch,
                     "adjoined factor does not share the curve element");
            node.adjoined = adj;
        }
        if (!p1.pair) p1.pair = node.assembly.g1;
        if (!p2.pair) p2.pair = *node.assembly.g2;
        p1.bound[r1] = true;
        p2.bound[r2] = true;
        node.piece1 = p1.id;
        node.slot1 = r1;
        node.piece2 = p2.id;
        node.slot2 = r2;
        check_coordinate(node.assembly, alpha);
        g.nodes.push_back(std::move(node));
    }

    void one_holed(int index, cplx alpha) {
        const CurveSpec& c = spec.curves[index];
        SlotRef end = SlotRef::curve_end(c.id);
        const SlotRef& other = c.boundary[0];
        int label = c.pants ? (*c.pants)[0] : -1;
        int found = -1, r = -1;
        for (const Piece& p : g.pieces) {
            if (label >= 0 && p.label >= 0 && p.label != label) continue;
            std::vector<int> ends;
            for (int s = 0; s < 3; ++s)
                if (p.slots[s] == end && !p.bound[s]) ends.push_back(s);
            if (ends.size() != 2) continue;
            int third = 3 - ends[0] - ends[1];
            if (!(p.slots[third] == other)) continue;
            found = p.id;
            r = ends[0] + 1 == ends[1] ? ends[0] : ends[1];  // start of the consecutive pair
        }
        CurveNode node;
        node.curve_index = index;
        node.curve_id = c.id;
        if (found < 0) {
            if (!g.pieces.empty())
                fail(ErrorCode::GluingOrderInvalid,
                     "the curve does not attach to the pieces built so far");
            found = new_piece({end, end, other}, label);
            r = 0;
            node.step = "initial";
        } else {
            node.step = "case3";
        }
        Piece& p = g.pieces[found];
        Signature s = rotate(p.signature(spec), r);
        HnnRow row = hnn_row(s);
        Moebius t;
        if (p.pair) {
            CanonicalPair q = rotated_presentation(*p.pair, r);
            t = moebius_from_triples(hnn_base_params(row, s), q.spec.params);
        }
        node.assembly = build_hnn({s, alpha, t});
        if (!p.pair) p.pair = node.assembly.g1;
        p.bound[r] = true;
        p.bound[(r + 1) % 3] = true;
        node.piece1 = p.id;
        node.slot1 = r;
        check_coordinate(node.assembly, alpha);
        g.nodes.push_back(std::move(node));
    }

    void add_generator(const Moebius& m, const std::string& name) {
        if (classify(m).kind == ElementType::Kind::Identity) return;
        Moebius inv = m.inverse();
        for (const Moebius& x : g.generators)
            if (psl_distance(x, m) < 1e-8 || psl_distance(x, inv) < 1e-8) return;
        g.generators.push_back(m);
        g.generator_names.push_back(name);
    }

    void collect_generators() {
        for (std::size_t n = 0; n < g.nodes.size(); ++n) {
            for (const Piece& p : g.pieces) {
                if (created_at[p.id] != static_cast<int>(n)) continue;
                add_generator(p.pair->A, "P" + std::to_string(p.id) + ".A");
                add_generator(p.pair->B, "P" + std::to_string(p.id) + ".B");
            }
            const CurveNode& node = g.nodes[n];
            std::string cname = "C" + std::to_string(node.curve_id);
            if (node.assembly.c) add_generator(*node.assembly.c, cname);
            if (node.adjoined) add_generator(*node.adjoined, cname);
        }
    }

    void final_checks() {
        for (const Piece& p : g.pieces)
            for (int s = 0; s < 3; ++s)
                if (!p.bound[s])
                    fail(ErrorCode::GluingOrderInvalid,
                         "piece " + std::to_string(p.id) + " has an unglued end of curve " +
                             std::to_string(p.slots[s].curve));
        int expected = 2 * spec.genus - 2 + static_cast<int>(spec.points.size());
        if (static_cast<int>(g.pieces.size()) != expected)
            fail(ErrorCode::InvalidArgument, "the partition yields " + std::to_string(g.pieces.size()) +
                                                 " pieces, the signature needs " +
                                                 std::to_string(expected));
        std::vector<SlotRef> pts, want;
        for (const Piece& p : g.pieces)
            for (const SlotRef& s : p.slots)
                if (s.kind == SlotRef::Kind::Point) pts.push_back(s);
        for (const Ramification& r : spec.points) want.push_back(SlotRef::point(r));
        if (!same_multiset(pts, want))
            fail(ErrorCode::InvalidArgument,
                 "marked points of the partition do not match the signature");
    }
};

cplx cpow_int(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

PlumbingParameter plumbing_for(const GroupAssembly& a, int curve_id) {
    PlumbingParameter out;
    out.curve_id = curve_id;
    cplx x = a.coordinate;
    if (a.kind == CombinationKind::Afp) {
        AfpRow row = *a.afp;
        if (is_cusp_row(row)) {
            out.value = std::exp(I * M_PI * x);
            out.formula = "exp(pi i alpha)";
            return out;
        }
        int mu = a.weight.order();
        double sc = afp_second_scale(row, a.g2->spec.nu);
        out.value = cpow_int(x * sc, mu);
        out.formula = sc == 1.0 ? "alpha^" + std::to_string(mu) : "(alpha/x)^" + std::to_string(mu);
        return out;
    }
    const Signature& s = a.g1.spec.nu;
    switch (*a.hnn) {
        case HnnRow::CuspCusp: {
            double sc = std::sqrt(2.0 / (1.0 + s[2].q()));
            out.value = std::exp(I * M_PI * x * sc);
            out.formula = "exp(pi i tau s)";
            return out;
        }
        case HnnRow::General:
        case HnnRow::Square:
        case HnnRow::Hexagonal: {
            int mu = s[0].order();
            out.value = cpow_int(x, mu);
            out.formula = "(tau^2)^" + std::to_string(mu);
            return out;
        }
        case HnnRow::Tetrahedral:
            out.value = -27.0 / 8.0 * cpow_int(x, 3);
            out.formula = "-27/8 tau^6";
            return out;
    }
    fail(ErrorCode::InternalInconsistency, "unreachable");
}

}  // namespace

std::string SlotRef::to_string() const {
    return kind == Kind::Point ? nu.to_string() : "c" + std::to_string(curve);
}

Signature Piece::signature(const OrbifoldSpec& spec) const {
    return {slot_nu(spec, slots[0]), slot_nu(spec, slots[1]), slot_nu(spec, slots[2])};
}

void OrbifoldSpec::validate() const {
    int n = static_cast<int>(points.size());
    if (genus < 0) fail(ErrorCode::InvalidArgument, "genus must be nonnegative");
    if (2 * genus - 2 + n <= 0)
        fail(ErrorCode::InvalidArgument, "signature needs 2p - 2 + n > 0");
    double recip = 0.0;
    for (const Ramification& r : points) recip += reciprocal(r);
    if (3.0 * genus - 3.0 + n - recip <= 1e-12)
        fail(ErrorCode::InvalidArgument, "signature needs 3p - 3 + n - sum(1/nu) > 0");
    if (static_cast<int>(curves.size()) != dimension())
        fail(ErrorCode::InvalidArgument, "partition needs " + std::to_string(dimension()) +
                                             " curves, found " + std::to_string(curves.size()));
    std::set<int> ids;
    for (const CurveSpec& c : curves)
        if (!ids.insert(c.id).second)
            fail(ErrorCode::InvalidArgument, "duplicate curve id " + std::to_string(c.id));
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const CurveSpec& c = curves[i];
        const std::string where = curve_label(static_cast<int>(i), c.id);
        if (!c.weight.is_infinite() && c.weight.order() < 3)
            fail(ErrorCode::InvalidArgument, where + ": weight must be >= 3 or infinite");
        std::size_t want = c.type == CurveType::FourHoled ? 4 : 1;
        if (c.boundary.size() != want)
            fail(ErrorCode::InvalidArgument, where + ": boundary needs " +
                                                 std::to_string(want) + " entries");
        for (const SlotRef& s : c.boundary) {
            if (s.kind != SlotRef::Kind::Curve) continue;
            if (s.curve == c.id)
                fail(ErrorCode::InvalidArgument, where + " lists itself on its boundary");
            if (!ids.count(s.curve))
                fail(ErrorCode::InvalidArgument,
                     where + " references unknown curve " + std::to_string(s.curve));
        }
        if (c.glue_after && (!ids.count(*c.glue_after) || *c.glue_after == c.id))
            fail(ErrorCode::InvalidArgument, where + ": bad glue_after");
    }
}

std::vector<int> OrbifoldSpec::gluing_order() const {
    std::vector<int> order;
    std::set<int> placed;
    std::vector<bool> used(curves.size(), false);
    while (order.size() < curves.size()) {
        bool progress = false;
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (used[i]) continue;
            const auto& after = curves[i].glue_after;
            if (after && !placed.count(*after)) continue;
            used[i] = true;
            placed.insert(curves[i].id);
            order.push_back(static_cast<int>(i));
            progress = true;
            break;
        }
        if (!progress) fail(ErrorCode::GluingOrderInvalid, "glue_after links form a cycle");
    }
    return order;
}

bool KoebeGroup::discreteness_certified() const {
    return std::all_of(nodes.begin(), nodes.end(),
                       [](const CurveNode& n) { return n.assembly.discreteness_certified; });
}

KoebeGroup build_koebe(const OrbifoldSpec& spec, const CoordinateVector& coords) {
    spec.validate();
    if (coords.size() != spec.curves.size())
        fail(ErrorCode::InvalidArgument, "expected " + std::to_string(spec.curves.size()) +
                                             " coordinates, found " + std::to_string(coords.size()));
    Builder b(spec);
    b.g.spec = spec;
    b.g.input_coordinates = coords;
    for (int idx : spec.gluing_order()) {
        const CurveSpec& c = spec.curves[idx];
        try {
            b.check_outer(c, coords[idx]);
            if (c.type == CurveType::FourHoled) b.four_holed(idx, coords[idx]);
            else b.one_holed(idx, coords[idx]);
        } catch (const Error& e) {
            throw Error(e.code(), curve_label(idx, c.id) + ": " + e.what());
        }
    }
    b.final_checks();
    b.collect_generators();
    return std::move(b.g);
}

CoordinateVector koebe_coordinates(const KoebeGroup& group) {
    CoordinateVector out(group.spec.curves.size());
    for (const CurveNode& n : group.nodes) out[n.curve_index] = combination_coordinate(n.assembly);
    return out;
}

KoebeGroup conjugate_group(const KoebeGroup& group, const Moebius& t) {
    KoebeGroup out = group;
    for (Piece& p : out.pieces)
        if (p.pair) p.pair = conjugate(t, *p.pair);
    for (CurveNode& n : out.nodes) {
        n.assembly = conjugate(t, n.assembly);
        if (n.adjoined) n.adjoined = conjugate(t, *n.adjoined);
    }
    for (Moebius& m : out.generators) m = conjugate(t, m);
    return out;
}

std::vector<PlumbingParameter> plumbing_parameters(const KoebeGroup& group) {
    std::vector<PlumbingParameter> out(group.spec.curves.size());
    for (const CurveNode& n : group.nodes) out[n.curve_index] = plumbing_for(n.assembly, n.curve_id);
    return out;
}

std::vector<PlumbingParameter> plumbing_parameters(const OrbifoldSpec& spec,
                                                   const CoordinateVector& coords) {
    return plumbing_parameters(build_koebe(spec, coords));
}

cplx plumbing_chart_product(const GroupAssembly& node, const SpherePoint& xi) {
    if (node.kind == CombinationKind::Afp) {
        PreferredCoordinate z1 = preferred_coordinate(node.g1, 0, 1, ChartRole::First);
        PreferredCoordinate z2 = preferred_coordinate(*node.g2, 0, 1, ChartRole::Second);
        return z1.evaluate(xi) * z2.evaluate(xi);
    }
    PreferredCoordinate z = preferred_coordinate(node.g1, 0, 1, ChartRole::First);
    Moebius t = conjugating_involution(node.g1);
    return z.evaluate((*node.c)(xi)) * z.evaluate(t(xi));
}

std::vector<SpherePoint> plumbing_sample_points(const GroupAssembly& node, int count) {
    PreferredCoordinate z = preferred_coordinate(node.g1, 0, 1, ChartRole::First);
    Moebius back = z.frame.inverse();
    std::vector<SpherePoint> out;
    for (int k = 0; k < count; ++k) {
        double theta = 2.0 * M_PI * k / count + 0.1;
        cplx w = z.kind == PreferredCoordinate::Kind::Cusp
                     ? cplx(2.0 * k / count - 1.0, 0.5 + 0.05 * k)
                     : std::polar(0.2 + 0.01 * k, theta);
        out.push_back(back(SpherePoint(w)));
    }
    return out;
}

ModularDecomposition modular_subgroups(const KoebeGroup& group) {
    ModularDecomposition out;
    for (const CurveNode& n : group.nodes) {
        ModularSubgroup m;
        m.curve_id = n.curve_id;
        m.kind = n.assembly.kind;
        m.generators = n.assembly.generators();
        m.pieces.push_back(n.piece1);
        if (n.piece2 >= 0) m.pieces.push_back(n.piece2);
        out.subgroups.push_back(std::move(m));
    }
    for (std::size_t i = 0; i + 1 < out.subgroups.size(); ++i) {
        const auto& a = out.subgroups[i].pieces;
        const auto& b = out.subgroups[i + 1].pieces;
        for (int p : a)
            if (std::find(b.begin(), b.end(), p) != b.end())
                out.shared.push_back({out.subgroups[i].curve_id, out.subgroups[i + 1].curve_id, p,
                                      group.pieces[p].signature(group.spec)});
    }
    return out;
}

}  // namespace koebe
