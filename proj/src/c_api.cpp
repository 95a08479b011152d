#include "koebe/koebe.h"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "koebe/error.hpp"
#include "koebe/io.hpp"
#include "koebe/verification.hpp"

struct koebe_group {
    koebe::KoebeGroup group;
};

struct koebe_orbit {
    koebe::LimitSetSample sample;
};

namespace {

thread_local std::string g_last_error;
std::atomic<double> g_tolerance{-1.0};

koebe_status record(koebe_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

koebe_status from_code(koebe::ErrorCode c) {
    using koebe::ErrorCode;
    switch (c) {
        case ErrorCode::InvalidArgument: return KOEBE_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return KOEBE_ERR_PARSE;
        case ErrorCode::DegenerateTriple: return KOEBE_ERR_DEGENERATE_TRIPLE;
        case ErrorCode::IdentityElement: return KOEBE_ERR_IDENTITY_ELEMENT;
        case ErrorCode::WrongElementType: return KOEBE_ERR_WRONG_ELEMENT_TYPE;
        case ErrorCode::AmbiguousOrientation: return KOEBE_ERR_AMBIGUOUS_ORIENTATION;
        case ErrorCode::NotOnGeodesic: return KOEBE_ERR_NOT_ON_GEODESIC;
        case ErrorCode::UnsupportedSignature: return KOEBE_ERR_UNSUPPORTED_SIGNATURE;
        case ErrorCode::UnsupportedRow: return KOEBE_ERR_UNSUPPORTED_ROW;
        case ErrorCode::EllipticDihedralFactor: return KOEBE_ERR_ELLIPTIC_DIHEDRAL_FACTOR;
        case ErrorCode::SharedElementMismatch: return KOEBE_ERR_SHARED_ELEMENT_MISMATCH;
        case ErrorCode::GluingOrderInvalid: return KOEBE_ERR_GLUING_ORDER_INVALID;
        case ErrorCode::CoordinateOutsideOuterDomain: return KOEBE_ERR_COORDINATE_OUTSIDE_OUTER_DOMAIN;
        case ErrorCode::BudgetExceeded: return KOEBE_ERR_BUDGET_EXCEEDED;
        case ErrorCode::InternalInconsistency: return KOEBE_ERR_INTERNAL;
    }
    return KOEBE_ERR_UNKNOWN;
}

// Runs f, translating exceptions into status codes at the boundary.
template <class F>
koebe_status guard(F&& f) {
    try {
        g_last_error.clear();
        return f();
    } catch (const koebe::Error& e) {
        return record(from_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return record(KOEBE_ERR_UNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return record(KOEBE_ERR_UNKNOWN, e.what());
    } catch (...) {
        return record(KOEBE_ERR_UNKNOWN, "unknown failure");
    }
}

koebe_complex to_c(koebe::cplx z) { return {z.real(), z.imag()}; }

koebe_matrix to_c(const koebe::Moebius& m) {
    return {to_c(m.a()), to_c(m.b()), to_c(m.c()), to_c(m.d())};
}

koebe_point to_c(const koebe::SpherePoint& p) {
    if (p.is_infinity()) return {1, {0.0, 0.0}};
    return {0, to_c(p.value())};
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

koebe_status write_string(const std::string& s, char** out) {
    *out = copy_string(s);
    return KOEBE_OK;
}

koebe_status null_arg(const char* what) {
    return record(KOEBE_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

double tolerance() {
    double t = g_tolerance.load();
    if (t > 0.0) return t;
    t = 1e-8;
    if (const char* env = std::getenv("KOEBE_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) t = v;
    }
    g_tolerance = t;
    return t;
}

koebe_status copy_values(const std::vector<koebe::cplx>& v, koebe_complex* out, size_t capacity,
                         size_t* count) {
    if (!count) return null_arg("count");
    *count = v.size();
    if (capacity > 0 && !out) return null_arg("out");
    for (size_t i = 0; i < v.size() && i < capacity; ++i) out[i] = to_c(v[i]);
    return KOEBE_OK;
}

}  // namespace

extern "C" {

const char* koebe_version(void) { return "1.0.0"; }

const char* koebe_status_string(koebe_status s) {
    switch (s) {
        case KOEBE_OK: return "ok";
        case KOEBE_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case KOEBE_ERR_PARSE: return "ParseError";
        case KOEBE_ERR_DEGENERATE_TRIPLE: return "DegenerateTriple";
        case KOEBE_ERR_IDENTITY_ELEMENT: return "IdentityElement";
        case KOEBE_ERR_WRONG_ELEMENT_TYPE: return "WrongElementType";
        case KOEBE_ERR_AMBIGUOUS_ORIENTATION: return "AmbiguousOrientation";
        case KOEBE_ERR_NOT_ON_GEODESIC: return "NotOnGeodesic";
        case KOEBE_ERR_UNSUPPORTED_SIGNATURE: return "UnsupportedSignature";
        case KOEBE_ERR_UNSUPPORTED_ROW: return "UnsupportedRow";
        case KOEBE_ERR_ELLIPTIC_DIHEDRAL_FACTOR: return "EllipticDihedralFactor";
        case KOEBE_ERR_SHARED_ELEMENT_MISMATCH: return "SharedElementMismatch";
        case KOEBE_ERR_GLUING_ORDER_INVALID: return "GluingOrderInvalid";
        case KOEBE_ERR_COORDINATE_OUTSIDE_OUTER_DOMAIN: return "CoordinateOutsideOuterDomain";
        case KOEBE_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
        case KOEBE_ERR_INTERNAL: return "InternalInconsistency";
        case KOEBE_ERR_IO: return "IoError";
        case KOEBE_ERR_UNKNOWN: break;
    }
    return "Unknown";
}

const char* koebe_last_error_message(void) { return g_last_error.c_str(); }

void koebe_string_free(char* s) { std::free(s); }

koebe_status koebe_set_tolerance(double tol) {
    if (!(tol > 0.0)) return record(KOEBE_ERR_INVALID_ARGUMENT, "tolerance must be positive");
    g_tolerance = tol;
    return KOEBE_OK;
}

double koebe_get_tolerance(void) { return tolerance(); }

koebe_status koebe_triangle_generators(const int nu[3], const koebe_point params[3], koebe_matrix* a,
                                       koebe_matrix* b) {
    return guard([&] {
        if (!nu || !params || !a || !b) return null_arg("arguments");
        koebe::Signature s;
        koebe::Triple t;
        for (int i = 0; i < 3; ++i) {
            if (nu[i] != KOEBE_INFINITY && nu[i] < 2)
                return record(KOEBE_ERR_INVALID_ARGUMENT, "ramification values are >= 2 or 0 for infinity");
            s[i] = nu[i] == KOEBE_INFINITY ? koebe::Ramification::infinite() : koebe::Ramification(nu[i]);
            t[i] = params[i].is_infinity ? koebe::SpherePoint::infinity()
                                         : koebe::SpherePoint(koebe::cplx(params[i].z.re, params[i].z.im));
        }
        koebe::CanonicalPair p = koebe::canonical_generators(s, t);
        *a = to_c(p.A);
        *b = to_c(p.B);
        return KOEBE_OK;
    });
}

koebe_status koebe_triangle_json(const char* request_json, char** out_json) {
    return guard([&] {
        if (!request_json || !out_json) return null_arg("arguments");
        return write_string(koebe::triangle_json(std::string(request_json)), out_json);
    });
}

koebe_status koebe_combine_json(const char* request_json, char** out_json) {
    return guard([&] {
        if (!request_json || !out_json) return null_arg("arguments");
        return write_string(koebe::combine_json(request_json), out_json);
    });
}

koebe_status koebe_group_build(const char* spec_json, koebe_group** out) {
    return guard([&] {
        if (!spec_json || !out) return null_arg("arguments");
        *out = nullptr;
        koebe::SpecDocument doc = koebe::parse_spec_document(spec_json);
        auto g = std::make_unique<koebe_group>();
        g->group = koebe::build_koebe(doc.spec, doc.coordinates);
        *out = g.release();
        return KOEBE_OK;
    });
}

koebe_status koebe_group_load(const char* group_json, koebe_group** out) {
    return guard([&] {
        if (!group_json || !out) return null_arg("arguments");
        *out = nullptr;
        auto g = std::make_unique<koebe_group>();
        g->group = koebe::parse_group_document(group_json);
        *out = g.release();
        return KOEBE_OK;
    });
}

void koebe_group_free(koebe_group* group) { delete group; }

koebe_status koebe_group_generator_count(const koebe_group* group, size_t* count) {
    if (!group || !count) return null_arg("arguments");
    *count = group->group.generators.size();
    return KOEBE_OK;
}

koebe_status koebe_group_generator(const koebe_group* group, size_t index, koebe_matrix* m,
                                   const char** name) {
    if (!group || !m) return null_arg("arguments");
    if (index >= group->group.generators.size())
        return record(KOEBE_ERR_INVALID_ARGUMENT, "generator index out of range");
    *m = to_c(group->group.generators[index]);
    if (name) *name = group->group.generator_names[index].c_str();
    return KOEBE_OK;
}

koebe_status koebe_group_certified(const koebe_group* group, int* certified) {
    if (!group || !certified) return null_arg("arguments");
    *certified = group->group.discreteness_certified() ? 1 : 0;
    return KOEBE_OK;
}

koebe_status koebe_group_coordinates(const koebe_group* group, koebe_complex* out, size_t capacity,
                                     size_t* count) {
    return guard([&] {
        if (!group) return null_arg("group");
        return copy_values(koebe::koebe_coordinates(group->group), out, capacity, count);
    });
}

koebe_status koebe_group_plumbing(const koebe_group* group, koebe_complex* out, size_t capacity,
                                  size_t* count) {
    return guard([&] {
        if (!group) return null_arg("group");
        std::vector<koebe::cplx> v;
        for (const auto& p : koebe::plumbing_parameters(group->group)) v.push_back(p.value);
        return copy_values(v, out, capacity, count);
    });
}

koebe_status koebe_group_to_json(const koebe_group* group, char** out_json) {
    return guard([&] {
        if (!group || !out_json) return null_arg("arguments");
        return write_string(koebe::group_document_json(group->group), out_json);
    });
}

koebe_status koebe_group_coordinates_json(const koebe_group* group, char** out_json) {
    return guard([&] {
        if (!group || !out_json) return null_arg("arguments");
        return write_string(koebe::coordinates_json(group->group), out_json);
    });
}

koebe_status koebe_group_plumbing_json(const koebe_group* group, char** out_json) {
    return guard([&] {
        if (!group || !out_json) return null_arg("arguments");
        return write_string(koebe::plumbing_json(group->group), out_json);
    });
}

koebe_status koebe_group_verify_json(const koebe_group* group, int max_word_length, size_t budget,
                                     char** out_json, int* warnings) {
    return guard([&] {
        if (!group || !out_json) return null_arg("arguments");
        if (max_word_length < 1 || max_word_length > 12)
            return record(KOEBE_ERR_INVALID_ARGUMENT, "word length must lie in [1, 12]");
        koebe::VerifyOptions opt;
        opt.tol.relation = tolerance();
        opt.jorgensen.max_word_length = max_word_length;
        if (budget > 0) opt.jorgensen.budget = budget;
        koebe::VerificationReport r = koebe::verify_group(group->group, opt);
        if (warnings) *warnings = static_cast<int>(r.warnings.size());
        return write_string(koebe::verification_json(r), out_json);
    });
}

koebe_status koebe_group_limit_set(const koebe_group* group, int max_word_length, size_t max_points,
                                   koebe_orbit** out) {
    return guard([&] {
        if (!group || !out) return null_arg("arguments");
        *out = nullptr;
        koebe::LimitSetOptions opt;
        opt.max_word_length = max_word_length;
        if (max_points > 0) opt.max_points = max_points;
        auto o = std::make_unique<koebe_orbit>();
        o->sample = koebe::sample_limit_set(group->group.generators, opt);
        *out = o.release();
        return KOEBE_OK;
    });
}

size_t koebe_orbit_size(const koebe_orbit* orbit) { return orbit ? orbit->sample.points.size() : 0; }

int koebe_orbit_budget_exceeded(const koebe_orbit* orbit) {
    return orbit && orbit->sample.budget_exceeded ? 1 : 0;
}

koebe_status koebe_orbit_point(const koebe_orbit* orbit, size_t index, koebe_point* p) {
    if (!orbit || !p) return null_arg("arguments");
    if (index >= orbit->sample.points.size())
        return record(KOEBE_ERR_INVALID_ARGUMENT, "point index out of range");
    *p = to_c(orbit->sample.points[index]);
    return KOEBE_OK;
}

koebe_status koebe_orbit_write_csv(const koebe_orbit* orbit, const char* path) {
    return guard([&] {
        if (!orbit || !path) return null_arg("arguments");
        std::ofstream f(path, std::ios::binary);
        if (!f) return record(KOEBE_ERR_IO, std::string("cannot open ") + path);
        koebe::write_limit_set_csv(orbit->sample, f);
        return f ? KOEBE_OK : record(KOEBE_ERR_IO, std::string("write failed: ") + path);
    });
}

koebe_status koebe_orbit_write_svg(const koebe_orbit* orbit, const char* path) {
    return guard([&] {
        if (!orbit || !path) return null_arg("arguments");
        std::ofstream f(path, std::ios::binary);
        if (!f) return record(KOEBE_ERR_IO, std::string("cannot open ") + path);
        koebe::write_limit_set_svg(orbit->sample, f);
        return f ? KOEBE_OK : record(KOEBE_ERR_IO, std::string("write failed: ") + path);
    });
}

void koebe_orbit_free(koebe_orbit* orbit) { delete orbit; }

}  // extern "C"
