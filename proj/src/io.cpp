#include "koebe/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "koebe/error.hpp"

namespace koebe {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    fail(ErrorCode::Parse, path + ": " + what);
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        int line = 1, col = 1;
        for (std::size_t i = 0; i < byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::Parse, "malformed JSON at line " + std::to_string(line) + ", column " +
                                   std::to_string(col));
    }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path + "." + key, "missing field");
    return *it;
}

long integer(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e9) return static_cast<long>(d);
    }
    parse_fail(path, "expected an integer");
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) parse_fail(path, "expected a number");
    return v.get<double>();
}

bool is_inf_string(const std::string& s) {
    return s == "inf" || s == "infinity" || s == "Infinity" || s == "∞";
}

Ramification ramification(const json& v, const std::string& path) {
    if (v.is_string()) {
        if (is_inf_string(v.get<std::string>())) return Ramification::infinite();
        parse_fail(path, "expected an integer >= 2 or \"inf\"");
    }
    long n = integer(v, path);
    if (n < 2) parse_fail(path, "ramification values are integers >= 2 or \"inf\"");
    return Ramification(static_cast<int>(n));
}

ordered ramification_json(const Ramification& r) {
    if (r.is_infinite()) return "inf";
    return r.order();
}

cplx complex_value(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
    if (v.is_object()) {
        double re = v.contains("re") ? number(v["re"], path + ".re") : 0.0;
        double im = v.contains("im") ? number(v["im"], path + ".im") : 0.0;
        if (!v.contains("re") && !v.contains("im")) parse_fail(path, "expected {re, im}");
        return {re, im};
    }
    if (v.is_string()) {
        try {
            SpherePoint p = parse_point(v.get<std::string>());
            if (!p.is_infinity()) return p.value();
        } catch (const Error&) {
        }
    }
    parse_fail(path, "expected a complex number");
}

ordered complex_json(cplx z) { return ordered{{"re", z.real()}, {"im", z.imag()}}; }

SpherePoint point_value(const json& v, const std::string& path) {
    if (v.is_string() && is_inf_string(v.get<std::string>())) return SpherePoint::infinity();
    return SpherePoint(complex_value(v, path));
}

ordered point_json(const SpherePoint& p) {
    if (p.is_infinity()) return "inf";
    return complex_json(p.value());
}

Signature signature_value(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) parse_fail(path, "expected three ramification values");
    return {ramification(v[0], path + "[0]"), ramification(v[1], path + "[1]"),
            ramification(v[2], path + "[2]")};
}

ordered signature_json(const Signature& s) {
    return ordered::array({ramification_json(s[0]), ramification_json(s[1]), ramification_json(s[2])});
}

Triple triple_value(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) parse_fail(path, "expected three points");
    return {point_value(v[0], path + "[0]"), point_value(v[1], path + "[1]"),
            point_value(v[2], path + "[2]")};
}

ordered triple_json(const Triple& t) {
    return ordered::array({point_json(t[0]), point_json(t[1]), point_json(t[2])});
}

ordered matrix_json(const Moebius& m) {
    ordered entries = ordered::array();
    for (cplx e : m.entries()) entries.push_back(ordered::array({e.real(), e.imag()}));
    return entries;
}

Moebius matrix_value(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 4) parse_fail(path, "expected four complex entries");
    cplx e[4];
    for (int i = 0; i < 4; ++i) e[i] = complex_value(v[i], path + "[" + std::to_string(i) + "]");
    try {
        return Moebius(e[0], e[1], e[2], e[3]);
    } catch (const Error&) {
        parse_fail(path, "singular matrix");
    }
}

ordered generator_json(const std::string& name, const Moebius& m) {
    return ordered{{"name", name},
                   {"matrix", matrix_json(m)},
                   {"map", moebius_string(m)},
                   {"type", classify(m).to_string()}};
}

ordered slot_json(const SlotRef& s) {
    if (s.kind == SlotRef::Kind::Curve) return "c" + std::to_string(s.curve);
    return ramification_json(s.nu);
}

SlotRef slot_value(const json& v, const std::string& path) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.size() > 1 && s[0] == 'c') {
            int id = 0;
            auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), id);
            if (ec == std::errc() && ptr == s.data() + s.size()) return SlotRef::curve_end(id);
            parse_fail(path, "curve references look like \"c<id>\"");
        }
    }
    if (v.is_object() && v.contains("curve"))
        return SlotRef::curve_end(static_cast<int>(integer(v["curve"], path + ".curve")));
    return SlotRef::point(ramification(v, path));
}

CurveType curve_type(const json& v, const std::string& path) {
    if (!v.is_string()) parse_fail(path, "expected \"0,4\" or \"1,1\"");
    std::string s = v.get<std::string>();
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '(' || c == ')'; }),
            s.end());
    if (s == "0,4") return CurveType::FourHoled;
    if (s == "1,1") return CurveType::OneHoled;
    parse_fail(path, "expected \"0,4\" or \"1,1\"");
}

bool orientation_value(const json& v, const std::string& path) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer() && (v.get<int>() == 1 || v.get<int>() == -1)) return v.get<int>() == 1;
    if (v.is_string() && (v == "+" || v == "-")) return v == "+";
    parse_fail(path, "expected true/false, +1/-1 or \"+\"/\"-\"");
}

void check_version(const json& doc) {
    if (!doc.is_object()) parse_fail("$", "expected an object");
    if (!doc.contains("format_version")) return;
    if (integer(doc["format_version"], "format_version") != kFormatVersion)
        parse_fail("format_version", "unsupported version; expected " + std::to_string(kFormatVersion));
}

SpecDocument spec_from(const json& doc, const std::string& root) {
    SpecDocument out;
    const json& sig = field(doc, "signature", root);
    std::string sp = root + ".signature";
    out.spec.genus = static_cast<int>(integer(field(sig, "p", sp), sp + ".p"));
    const json& nu = field(sig, "nu", sp);
    if (!nu.is_array()) parse_fail(sp + ".nu", "expected an array");
    for (std::size_t i = 0; i < nu.size(); ++i)
        out.spec.points.push_back(ramification(nu[i], sp + ".nu[" + std::to_string(i) + "]"));
    if (sig.contains("n") && integer(sig["n"], sp + ".n") != static_cast<long>(nu.size()))
        parse_fail(sp + ".n", "does not match the length of nu");

    const json& part = field(doc, "partition", root);
    if (!part.is_array()) parse_fail(root + ".partition", "expected an array");
    for (std::size_t i = 0; i < part.size(); ++i) {
        std::string cp = root + ".partition[" + std::to_string(i) + "]";
        const json& c = part[i];
        CurveSpec cs;
        cs.id = static_cast<int>(integer(field(c, "curve_id", cp), cp + ".curve_id"));
        cs.type = curve_type(field(c, "type", cp), cp + ".type");
        cs.weight = ramification(field(c, "weight", cp), cp + ".weight");
        const json& b = field(c, "boundary_nu", cp);
        if (!b.is_array()) parse_fail(cp + ".boundary_nu", "expected an array");
        for (std::size_t k = 0; k < b.size(); ++k)
            cs.boundary.push_back(slot_value(b[k], cp + ".boundary_nu[" + std::to_string(k) + "]"));
        if (c.contains("orientation")) cs.orientation = orientation_value(c["orientation"], cp + ".orientation");
        if (c.contains("glue_after") && !c["glue_after"].is_null())
            cs.glue_after = static_cast<int>(integer(c["glue_after"], cp + ".glue_after"));
        if (c.contains("pants") && !c["pants"].is_null()) {
            const json& pn = c["pants"];
            std::string pp = cp + ".pants";
            if (pn.is_array() && pn.size() == 2)
                cs.pants = std::array<int, 2>{static_cast<int>(integer(pn[0], pp + "[0]")),
                                              static_cast<int>(integer(pn[1], pp + "[1]"))};
            else if (pn.is_array() && pn.size() == 1)
                cs.pants = std::array<int, 2>{static_cast<int>(integer(pn[0], pp + "[0]")), -1};
            else
                parse_fail(pp, "expected one or two pants labels");
        }
        out.spec.curves.push_back(std::move(cs));
    }

    if (doc.contains("coordinates")) {
        const json& co = doc["coordinates"];
        if (!co.is_array()) parse_fail(root + ".coordinates", "expected an array");
        for (std::size_t i = 0; i < co.size(); ++i)
            out.coordinates.push_back(complex_value(co[i], root + ".coordinates[" + std::to_string(i) + "]"));
    }
    return out;
}

ordered spec_json(const SpecDocument& doc) {
    ordered sig{{"p", doc.spec.genus}, {"n", doc.spec.points.size()}, {"nu", ordered::array()}};
    for (const Ramification& r : doc.spec.points) sig["nu"].push_back(ramification_json(r));
    ordered part = ordered::array();
    for (const CurveSpec& c : doc.spec.curves) {
        ordered e{{"curve_id", c.id},
                  {"type", c.type == CurveType::FourHoled ? "0,4" : "1,1"},
                  {"weight", ramification_json(c.weight)},
                  {"boundary_nu", ordered::array()},
                  {"orientation", c.orientation},
                  {"glue_after", c.glue_after ? ordered(*c.glue_after) : ordered(nullptr)}};
        for (const SlotRef& s : c.boundary) e["boundary_nu"].push_back(slot_json(s));
        if (c.pants) e["pants"] = ordered::array({(*c.pants)[0], (*c.pants)[1]});
        part.push_back(std::move(e));
    }
    ordered coords = ordered::array();
    for (cplx z : doc.coordinates) coords.push_back(complex_json(z));
    return ordered{{"format_version", kFormatVersion},
                   {"signature", sig},
                   {"partition", part},
                   {"coordinates", coords}};
}

ordered domain_json(const ContainmentDomain& d) {
    return ordered{{"kind", d.kind == ContainmentDomain::Kind::HalfPlane ? "half_plane" : "punctured_disc"},
                   {"bound", d.bound},
                   {"description", d.describe()}};
}

ordered pair_json(const CanonicalPair& p) {
    return ordered{{"signature", signature_json(p.spec.nu)}, {"params", triple_json(p.spec.params)}};
}

CanonicalPair pair_value(const json& v, const std::string& path) {
    Signature s = signature_value(field(v, "signature", path), path + ".signature");
    Triple t = triple_value(field(v, "params", path), path + ".params");
    try {
        return canonical_generators(s, t);
    } catch (const Error& e) {
        parse_fail(path, e.what());
    }
}

ordered assembly_json(const GroupAssembly& a) {
    ordered out{{"kind", a.kind == CombinationKind::Afp ? "afp" : "hnn"},
                {"row", a.row_name()},
                {"weight", ramification_json(a.weight)},
                {"coordinate", complex_json(a.coordinate)},
                {"domain", domain_json(a.domain)},
                {"certified", a.discreteness_certified},
                {"first", pair_json(a.g1)}};
    if (a.g2) out["second"] = pair_json(*a.g2);
    if (a.c) out["conjugator"] = matrix_json(*a.c);
    ordered gens = ordered::array();
    auto g = a.generators();
    const char* names[3] = {"A", "B", a.kind == CombinationKind::Afp ? "B2" : "C"};
    for (int i = 0; i < 3; ++i) gens.push_back(generator_json(names[i], g[i]));
    out["generators"] = gens;
    return out;
}

std::string dump(const ordered& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------- scalars

Ramification parse_ramification(const std::string& text) {
    if (is_inf_string(text)) return Ramification::infinite();
    int n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size() || n < 2)
        fail(ErrorCode::Parse, "\"" + text + "\": expected an integer >= 2 or inf");
    return Ramification(n);
}

SpherePoint parse_point(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (is_inf_string(s)) return SpherePoint::infinity();
    auto bad = [&]() -> SpherePoint { fail(ErrorCode::Parse, "\"" + raw + "\": expected a complex number or inf"); };
    auto real = [&](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (...) {
            bad();
        }
        if (used != t.size()) bad();
        return v;
    };
    if (s.empty()) return bad();
    if (s.back() != 'i' && s.back() != 'j') return SpherePoint(real(s));
    s.pop_back();
    // Split at the last sign that is not an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    if (cut == std::string::npos) return SpherePoint(cplx(0.0, real(s)));
    return SpherePoint(cplx(real(s.substr(0, cut)), real(s.substr(cut))));
}

std::string moebius_string(const Moebius& m) {
    auto c = [](cplx z) {
        std::ostringstream os;
        os.precision(17);
        os << "(" << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i)";
        return os.str();
    };
    return "z -> (" + c(m.a()) + "z + " + c(m.b()) + ")/(" + c(m.c()) + "z + " + c(m.d()) + ")";
}

// ---------------------------------------------------------------- documents

SpecDocument parse_spec_document(const std::string& text) {
    json doc = parse_text(text);
    check_version(doc);
    return spec_from(doc, "$");
}

std::string spec_document_json(const SpecDocument& doc) { return dump(spec_json(doc)); }

std::string group_document_json(const KoebeGroup& group) {
    ordered out{{"format_version", kFormatVersion},
                {"kind", "koebe_group"},
                {"spec", spec_json({group.spec, group.input_coordinates})},
                {"discreteness_certified", group.discreteness_certified()}};
    ordered gens = ordered::array();
    for (std::size_t i = 0; i < group.generators.size(); ++i)
        gens.push_back(generator_json(group.generator_names[i], group.generators[i]));
    out["generators"] = gens;
    ordered pieces = ordered::array();
    for (const Piece& p : group.pieces) {
        ordered e{{"id", p.id}, {"slots", ordered::array()}};
        for (const SlotRef& s : p.slots) e["slots"].push_back(slot_json(s));
        if (p.label >= 0) e["label"] = p.label;
        e["group"] = pair_json(*p.pair);
        pieces.push_back(std::move(e));
    }
    out["pieces"] = pieces;
    ordered nodes = ordered::array();
    for (const CurveNode& n : group.nodes) {
        ordered e{{"curve_id", n.curve_id},
                  {"partition_index", n.curve_index},
                  {"step", n.step},
                  {"piece1", n.piece1},
                  {"slot1", n.slot1}};
        if (n.piece2 >= 0) {
            e["piece2"] = n.piece2;
            e["slot2"] = n.slot2;
        }
        e["assembly"] = assembly_json(n.assembly);
        if (n.adjoined) e["adjoined"] = matrix_json(*n.adjoined);
        nodes.push_back(std::move(e));
    }
    out["nodes"] = nodes;
    return dump(out);
}

KoebeGroup parse_group_document(const std::string& text) {
    json doc = parse_text(text);
    check_version(doc);
    if (doc.contains("kind") && doc["kind"] != "koebe_group")
        parse_fail("kind", "expected \"koebe_group\"");
    KoebeGroup g;
    SpecDocument sd = spec_from(field(doc, "spec", "$"), "spec");
    g.spec = sd.spec;
    g.input_coordinates = sd.coordinates;

    const json& gens = field(doc, "generators", "$");
    if (!gens.is_array()) parse_fail("generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string p = "generators[" + std::to_string(i) + "]";
        const json& name = field(gens[i], "name", p);
        if (!name.is_string()) parse_fail(p + ".name", "expected a string");
        g.generator_names.push_back(name.get<std::string>());
        g.generators.push_back(matrix_value(field(gens[i], "matrix", p), p + ".matrix"));
    }

    const json& pieces = field(doc, "pieces", "$");
    if (!pieces.is_array()) parse_fail("pieces", "expected an array");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::string p = "pieces[" + std::to_string(i) + "]";
        const json& e = pieces[i];
        Piece piece;
        piece.id = static_cast<int>(integer(field(e, "id", p), p + ".id"));
        const json& slots = field(e, "slots", p);
        if (!slots.is_array() || slots.size() != 3) parse_fail(p + ".slots", "expected three slots");
        for (int k = 0; k < 3; ++k) {
            piece.slots[k] = slot_value(slots[k], p + ".slots[" + std::to_string(k) + "]");
            piece.bound[k] = true;
        }
        if (e.contains("label")) piece.label = static_cast<int>(integer(e["label"], p + ".label"));
        piece.pair = pair_value(field(e, "group", p), p + ".group");
        g.pieces.push_back(std::move(piece));
    }

    const json& nodes = field(doc, "nodes", "$");
    if (!nodes.is_array()) parse_fail("nodes", "expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string p = "nodes[" + std::to_string(i) + "]";
        const json& e = nodes[i];
        CurveNode n;
        n.curve_id = static_cast<int>(integer(field(e, "curve_id", p), p + ".curve_id"));
        n.curve_index = static_cast<int>(integer(field(e, "partition_index", p), p + ".partition_index"));
        if (n.curve_index < 0 || n.curve_index >= static_cast<int>(g.spec.curves.size()))
            parse_fail(p + ".partition_index", "out of range");
        const json& step = field(e, "step", p);
        if (!step.is_string()) parse_fail(p + ".step", "expected a string");
        n.step = step.get<std::string>();
        n.piece1 = static_cast<int>(integer(field(e, "piece1", p), p + ".piece1"));
        n.slot1 = static_cast<int>(integer(field(e, "slot1", p), p + ".slot1"));
        if (e.contains("piece2")) {
            n.piece2 = static_cast<int>(integer(e["piece2"], p + ".piece2"));
            n.slot2 = static_cast<int>(integer(field(e, "slot2", p), p + ".slot2"));
        }
        std::string ap = p + ".assembly";
        const json& a = field(e, "assembly", p);
        GroupAssembly& as = n.assembly;
        const json& kind = field(a, "kind", ap);
        as.g1 = pair_value(field(a, "first", ap), ap + ".first");
        try {
            if (kind == "afp") {
                as.kind = CombinationKind::Afp;
                as.g2 = pair_value(field(a, "second", ap), ap + ".second");
                as.afp = afp_row(as.g1.spec.nu, as.g2->spec.nu);
            } else if (kind == "hnn") {
                as.kind = CombinationKind::Hnn;
                as.c = matrix_value(field(a, "conjugator", ap), ap + ".conjugator");
                as.hnn = hnn_row(as.g1.spec.nu);
            } else {
                parse_fail(ap + ".kind", "expected \"afp\" or \"hnn\"");
            }
            as.weight = as.g1.spec.nu[0];
            as.shared = as.g1.A;
            as.coordinate = combination_coordinate(as);
            as.domain = coordinate_domain(as);
            as.discreteness_certified = as.domain.contains(as.coordinate);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::Parse) throw;
            parse_fail(ap, err.what());
        }
        if (e.contains("adjoined")) n.adjoined = matrix_value(e["adjoined"], p + ".adjoined");
        g.nodes.push_back(std::move(n));
    }
    return g;
}

std::string coordinates_json(const KoebeGroup& group) {
    CoordinateVector c = koebe_coordinates(group);
    ordered list = ordered::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        ordered e{{"curve_id", group.spec.curves[i].id}, {"coordinate", complex_json(c[i])}};
        if (i < group.input_coordinates.size()) {
            double dev = std::abs(c[i] - group.input_coordinates[i]);
            worst = std::max(worst, dev);
            e["deviation"] = dev;
        }
        list.push_back(std::move(e));
    }
    return dump(ordered{{"format_version", kFormatVersion},
                        {"coordinates", list},
                        {"max_deviation", worst}});
}

std::string plumbing_json(const KoebeGroup& group) {
    ordered list = ordered::array();
    for (const PlumbingParameter& p : plumbing_parameters(group))
        list.push_back(ordered{{"curve_id", p.curve_id}, {"value", complex_json(p.value)}, {"formula", p.formula}});
    return dump(ordered{{"format_version", kFormatVersion}, {"plumbing", list}});
}

std::string verification_json(const VerificationReport& r) {
    ordered rel = ordered::array();
    for (const RelationCheck& c : r.relations.checks)
        rel.push_back(ordered{{"name", c.name}, {"residual", c.residual}, {"ok", c.ok}});
    ordered sep = ordered::array();
    for (const CurveSeparation& s : r.separation.curves)
        sep.push_back(ordered{{"curve_id", s.curve_id},
                              {"row", s.row},
                              {"method", s.method},
                              {"margin", s.margin},
                              {"separated", s.separated},
                              {"in_domain", s.in_domain}});
    ordered viol = ordered::array();
    for (std::size_t i = 0; i < r.jorgensen.violations.size() && i < 20; ++i) {
        const auto& v = r.jorgensen.violations[i];
        viol.push_back(ordered{{"x", word_string(v.x)}, {"y", word_string(v.y)}, {"value", v.value}});
    }
    std::string status = !r.jorgensen.violations.empty() ? "likely non-discrete"
                         : r.discreteness_certified     ? "certified by the combination domain"
                                                        : "no obstruction found";
    ordered jor{{"words", r.jorgensen.words},
                {"pairs_tested", r.jorgensen.pairs_tested},
                {"exempt", r.jorgensen.exempt},
                {"exhaustive", r.jorgensen.exhaustive},
                {"violation_count", r.jorgensen.violations.size()},
                {"violations", viol}};
    return dump(ordered{{"format_version", kFormatVersion},
                        {"relations_ok", r.relations.ok()},
                        {"relations", rel},
                        {"separation", sep},
                        {"jorgensen", jor},
                        {"discreteness_certified", r.discreteness_certified},
                        {"status", status},
                        {"warnings", r.warnings}});
}

std::string triangle_json(const CanonicalPair& p) {
    ordered out{{"format_version", kFormatVersion},
                {"signature", signature_json(p.spec.nu)},
                {"params", triple_json(p.spec.params)},
                {"class", to_string(p.spec.group_class())},
                {"construction", to_string(p.construction)}};
    auto g = p.generators();
    out["generators"] = ordered::array({generator_json("A", g[0]), generator_json("B", g[1]),
                                        generator_json("(AB)^-1", g[2])});
    if (p.k) out["k"] = *p.k;
    if (p.h) out["h"] = *p.h;
    if (p.l) out["l"] = *p.l;
    out["non_unique"] = p.non_unique;
    if (p.alternate_fourth) out["alternate_fourth"] = point_json(*p.alternate_fourth);
    return dump(out);
}

std::string triangle_json(const std::string& request) {
    json doc = parse_text(request);
    check_version(doc);
    Signature s = signature_value(field(doc, "signature", "$"), "signature");
    Triple t = doc.contains("params") ? triple_value(doc["params"], "params") : standard_params();
    return triangle_json(canonical_generators(s, t));
}

std::string combine_json(const std::string& request) {
    json doc = parse_text(request);
    check_version(doc);
    const json& kind = field(doc, "kind", "$");
    GroupAssembly a;
    if (kind == "afp") {
        Signature s1 = signature_value(field(doc, "first", "$"), "first");
        Signature s2 = signature_value(field(doc, "second", "$"), "second");
        a = build_afp({s1, s2, complex_value(field(doc, "alpha", "$"), "alpha"), Moebius()});
    } else if (kind == "hnn") {
        Signature s = signature_value(field(doc, "base", "$"), "base");
        a = build_hnn({s, complex_value(field(doc, "coordinate", "$"), "coordinate"), Moebius()});
    } else {
        parse_fail("kind", "expected \"afp\" or \"hnn\"");
    }
    ordered out = assembly_json(a);
    out["recovered_coordinate"] = complex_json(combination_coordinate(a));
    ordered wrapped{{"format_version", kFormatVersion}};
    for (auto it = out.begin(); it != out.end(); ++it) wrapped[it.key()] = it.value();
    return dump(wrapped);
}

}  // namespace koebe
