#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "koebe/builder.hpp"
#include "koebe/words.hpp"

namespace koebe {

struct Tolerances {
    double relation = 1e-8;   // PSL distance for relations
    double jorgensen = 1e-9;  // slack on the inequality and on the exemption tests
};

// ---------------------------------------------------------------- relations

struct RelationCheck {
    std::string name;
    double residual = 0.0;
    bool ok = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool ok() const;
};

// Orders (or parabolicity) of A, B and AB for one triangle group.
RelationReport check_triangle_relations(const CanonicalPair& pair, double tol = 1e-8);
// Every piece, every shared element, every HNN relation and every adjoined factor.
RelationReport check_relations(const KoebeGroup& group, double tol = 1e-8);

// ---------------------------------------------------------------- Jorgensen

struct JorgensenOptions {
    int max_word_length = 4;
    std::size_t budget = 1000000;  // pairs tested at most
    std::uint32_t seed = 20240611;
    double tol = 1e-9;
};

struct JorgensenViolation {
    Word x, y;
    double value = 0.0;  // |tr^2 X - 4| + |tr[X,Y] - 2|
};

struct JorgensenReport {
    std::size_t words = 0;
    std::size_t pairs_tested = 0;
    std::size_t exempt = 0;
    bool exhaustive = false;  // every pair of words was tested
    std::vector<JorgensenViolation> violations;
};

// True when X and Y generate a finite group (closure stays below `limit`).
bool generates_finite_group(const Moebius& x, const Moebius& y, std::size_t limit = 130);
// Pairs to which the inequality does not apply: identities, a shared fixed
// point, one element preserving the other's fixed set, or a finite group.
bool elementary_pair(const Moebius& x, const Moebius& y, double tol = 1e-9);

JorgensenReport jorgensen_screen(const std::vector<Moebius>& generators,
                                 const JorgensenOptions& options = {});

// ---------------------------------------------------------------- separation

struct CurveSeparation {
    int curve_id = 0;
    std::string row;
    std::string method;
    double margin = 0.0;  // positive when the protected regions separate
    bool separated = false;
    bool in_domain = false;
};

struct SeparationReport {
    std::vector<CurveSeparation> curves;
    bool ok() const;
};

CurveSeparation separation_check(const GroupAssembly& node, int curve_id = 0);
SeparationReport separation_check(const KoebeGroup& group);

// ---------------------------------------------------------------- limit set

struct LimitSetOptions {
    int max_word_length = 8;  // at most 12
    std::size_t max_points = 200000;
    std::size_t max_words = 2000000;
    double dedupe = 1e-7;  // chordal
};

struct LimitSetSample {
    std::vector<SpherePoint> points;
    std::size_t words_visited = 0;
    bool budget_exceeded = false;
};

LimitSetSample sample_limit_set(const std::vector<Moebius>& generators,
                                const LimitSetOptions& options = {});
void write_limit_set_csv(const LimitSetSample& sample, std::ostream& out);
// Points drawn through z / sqrt(1 + |z|^2) into the unit disc.
void write_limit_set_svg(const LimitSetSample& sample, std::ostream& out, int size = 1024);

// ---------------------------------------------------------------- summary

struct VerifyOptions {
    Tolerances tol;
    JorgensenOptions jorgensen;
    bool run_jorgensen = true;
};

struct VerificationReport {
    RelationReport relations;
    SeparationReport separation;
    JorgensenReport jorgensen;
    bool discreteness_certified = false;
    std::vector<std::string> warnings;

    // Relations hold; warnings do not affect this.
    bool ok() const { return relations.ok(); }
};

VerificationReport verify_group(const KoebeGroup& group, const VerifyOptions& options = {});

}  // namespace koebe
