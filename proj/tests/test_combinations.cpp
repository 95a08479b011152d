#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "koebe/combinations.hpp"
#include "koebe/error.hpp"
#include "support.hpp"

using namespace koebe;
using oracle::I;
using oracle::M2;

namespace {

Ramification R(int v) { return v == 0 ? Ramification::infinite() : Ramification(v); }
Signature sig(int a, int b, int c) { return {R(a), R(b), R(c)}; }

struct AfpCase {
    Signature first, second;
    AfpRow row;
};

std::vector<AfpCase> afp_cases() {
    return {
        {sig(0, 3, 4), sig(0, 5, 0), AfpRow::HypHypCusp},
        {sig(0, 0, 0), sig(0, 2, 2), AfpRow::HypParCusp},
        {sig(0, 2, 2), sig(0, 2, 2), AfpRow::ParParCusp},
        {sig(4, 3, 5), sig(4, 5, 6), AfpRow::HypHypFinite},
        {sig(4, 5, 6), sig(4, 4, 2), AfpRow::HypParFinite},
        {sig(3, 4, 5), sig(3, 3, 2), AfpRow::HypEll},
        {sig(6, 3, 2), sig(6, 3, 2), AfpRow::ParParFinite},
        {sig(3, 3, 3), sig(3, 4, 2), AfpRow::ParEll},
        {sig(5, 3, 2), sig(5, 3, 2), AfpRow::EllEll},
    };
}

// A point strictly inside the domain, spread over its shape.
cplx inside(const ContainmentDomain& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 0.95), v(-3.0, 3.0), ang(0.0, 2 * oracle::kPi);
    if (d.kind == ContainmentDomain::Kind::HalfPlane) return {v(rng), d.bound + 0.05 + 3.0 * u(rng)};
    return std::polar(d.bound * u(rng), ang(rng));
}

}  // namespace

TEST_CASE("amalgamation rows are recognised") {
    for (const AfpCase& c : afp_cases()) CHECK(afp_row(c.first, c.second) == c.row);
    CHECK_THROWS_AS(afp_row(sig(0, 3, 4), sig(5, 3, 2)), Error);
}

TEST_CASE("HNN rows are recognised") {
    CHECK(hnn_row(sig(0, 0, 3)) == HnnRow::CuspCusp);
    CHECK(hnn_row(sig(5, 5, 3)) == HnnRow::General);
    CHECK(hnn_row(sig(4, 4, 2)) == HnnRow::Square);
    CHECK(hnn_row(sig(3, 3, 3)) == HnnRow::Hexagonal);
    CHECK(hnn_row(sig(3, 3, 2)) == HnnRow::Tetrahedral);
    CHECK_THROWS_AS(hnn_row(sig(4, 5, 6)), Error);
}

TEST_CASE("cusp amalgamation domains are the half plane above height one") {
    for (const AfpCase& c : afp_cases()) {
        if (!is_cusp_row(c.row)) continue;
        ContainmentDomain d = afp_domain(c.row, c.first, c.second);
        CHECK(d.kind == ContainmentDomain::Kind::HalfPlane);
        CHECK(d.bound == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("the shared element is inverted in the second factor") {
    std::mt19937_64 rng(1);
    for (const AfpCase& c : afp_cases()) {
        ContainmentDomain d = afp_domain(c.row, c.first, c.second);
        GroupAssembly g = build_afp({c.first, c.second, inside(d, rng), Moebius()});
        CHECK(psl_distance(g.g2->A, g.g1.A.inverse()) < 1e-9);
        CHECK(g.discreteness_certified);
    }
}

TEST_CASE("amalgamation coordinates round trip and are conjugation invariant") {
    std::mt19937_64 rng(2);
    for (const AfpCase& c : afp_cases()) {
        ContainmentDomain d = afp_domain(c.row, c.first, c.second);
        for (int i = 0; i < 20; ++i) {
            cplx alpha = inside(d, rng);
            GroupAssembly g = build_afp({c.first, c.second, alpha, Moebius()});
            CHECK(std::abs(afp_coordinate(g) - alpha) < 1e-9);
            Moebius t = support::random_moebius(rng);
            CHECK(std::abs(afp_coordinate(conjugate(t, g)) - alpha) < 1e-9);
            GroupAssembly framed = build_afp({c.first, c.second, alpha, t});
            CHECK(std::abs(afp_coordinate(framed) - alpha) < 1e-9);
        }
    }
}

TEST_CASE("the worked cusp example places the second factor at (inf, alpha, alpha - 1)") {
    cplx alpha(0.3, 2.0);
    GroupAssembly g = build_afp({sig(0, 0, 0), sig(0, 2, 2), alpha, Moebius()});
    const Triple& p = g.g2->spec.params;
    CHECK(p[0].is_infinity());
    CHECK(std::abs(p[1].value() - alpha) < 1e-12);
    CHECK(std::abs(p[2].value() - (alpha - 1.0)) < 1e-12);
    // z -> -z moved to alpha: the involution z -> 2 alpha - z.
    CHECK(support::distance(g.g2->B, M2{I, -2.0 * I * alpha, 0.0, -I}) < 1e-12);
}

TEST_CASE("elliptic second fixed point matches its closed form") {
    for (auto [mu, nu] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {5, 3}, {3, 4}}) {
        double q1 = std::cos(oracle::kPi / mu), p1 = std::sin(oracle::kPi / mu);
        double q2 = std::cos(oracle::kPi / nu), p2 = std::sin(oracle::kPi / nu);
        double x = (q1 * q2 - p1 * p2) / (q1 * q2 + p1 * p2);
        CHECK(elliptic_second_fixed_point(sig(mu, nu, 2)) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("HNN conjugators match the closed forms") {
    // Square and hexagonal rows: C = i [[0, tau], [-1/tau, 1/tau]].
    for (Signature s : {sig(4, 4, 2), sig(3, 3, 3)}) {
        cplx tau(0.1, 0.03);
        GroupAssembly g = build_hnn({s, tau * tau, Moebius()});
        M2 ref{0.0, I * tau, -I / tau, I / tau};
        CHECK(support::distance(*g.c, ref) < 1e-12 * std::abs(1.0 / tau));
    }
    {
        cplx tau(0.12, -0.02);
        GroupAssembly g = build_hnn({sig(3, 3, 2), tau * tau, Moebius()});
        M2 ref{I * tau, -I * tau, -2.0 * I / (3.0 * tau), -I / (3.0 * tau)};
        CHECK(support::distance(*g.c, ref) < 1e-10);
    }
    for (int nu : {2, 3, 5}) {
        cplx tau(0.4, 2.5);
        double q = std::cos(oracle::kPi / nu);
        GroupAssembly g = build_hnn({sig(0, 0, nu), tau, Moebius()});
        M2 ref{I * tau, I * std::sqrt(2 / (1 + q)), I * std::sqrt((1 + q) / 2), 0.0};
        CHECK(support::distance(*g.c, ref) < 1e-12);
    }
}

TEST_CASE("HNN relations hold: C B^-1 C^-1 = A") {
    std::mt19937_64 rng(4);
    for (Signature s : {sig(0, 0, 3), sig(4, 4, 3), sig(5, 5, 2), sig(4, 4, 2), sig(3, 3, 3), sig(3, 3, 2)}) {
        HnnRow row = hnn_row(s);
        ContainmentDomain d = hnn_domain(row, s);
        for (int i = 0; i < 10; ++i) {
            GroupAssembly g = build_hnn({s, inside(d, rng), Moebius()});
            CHECK(psl_distance(conjugate(*g.c, g.g1.B.inverse()), g.g1.A) < 1e-9);
        }
    }
}

TEST_CASE("conjugating involutions swap A and B") {
    for (Signature s : {sig(0, 0, 3), sig(4, 4, 3), sig(7, 7, 7), sig(4, 4, 2), sig(3, 3, 3), sig(3, 3, 2)}) {
        CanonicalPair base = canonical_generators(s, hnn_base_params(hnn_row(s), s));
        Moebius t = conjugating_involution(base);
        CHECK(oracle::is_plus_minus_identity(support::to_m2(t * t), 1e-9));
        CHECK(psl_distance(conjugate(t, base.B), base.A) < 1e-9);
    }
}

TEST_CASE("involutions at the standard parameters match the plumbing table") {
    auto check_map = [](const Moebius& t, auto ref) {
        for (cplx z : {cplx(0.3, 0.4), cplx(-1.2, 0.8), cplx(2.0, 0.1)})
            CHECK(std::abs(t(SpherePoint(z)).value() - ref(z)) < 1e-10);
    };
    Triple std_params{SpherePoint::infinity(), SpherePoint(0.0), SpherePoint(1.0)};
    check_map(conjugating_involution(canonical_generators(sig(4, 4, 2), std_params)),
              [](cplx z) { return 1.0 - z; });
    check_map(conjugating_involution(canonical_generators(sig(3, 3, 3), std_params)),
              [](cplx z) { return 1.0 - z; });
    check_map(conjugating_involution(canonical_generators(sig(3, 3, 2), std_params)),
              [](cplx z) { return (2.0 * z + 1.0) / (2.0 * z - 2.0); });
    double q = std::cos(oracle::kPi / 5);
    check_map(conjugating_involution(canonical_generators(sig(0, 0, 5), std_params)),
              [q](cplx z) { return -2.0 / ((1 + q) * z); });
}

TEST_CASE("HNN coordinates round trip and are conjugation invariant") {
    std::mt19937_64 rng(5);
    for (Signature s : {sig(0, 0, 3), sig(4, 4, 3), sig(6, 6, 2), sig(4, 4, 2), sig(3, 3, 3), sig(3, 3, 2)}) {
        ContainmentDomain d = hnn_domain(hnn_row(s), s);
        for (int i = 0; i < 20; ++i) {
            cplx x = inside(d, rng);
            GroupAssembly g = build_hnn({s, x, Moebius()});
            CHECK(std::abs(hnn_coordinate(g) - x) < 1e-9);
            Moebius t = support::random_moebius(rng);
            CHECK(std::abs(combination_coordinate(conjugate(t, g)) - x) < 1e-9);
        }
    }
}

TEST_CASE("general HNN domain is (m - 1) / 2") {
    for (auto [mu, nu] : std::vector<std::pair<int, int>>{{4, 3}, {5, 2}, {7, 7}}) {
        auto [m, n] = oracle::hnn_mn(mu, nu);
        ContainmentDomain d = hnn_domain(HnnRow::General, sig(mu, mu, nu));
        CHECK(d.kind == ContainmentDomain::Kind::PuncturedDisc);
        CHECK(d.bound == doctest::Approx((m - 1) / 2).epsilon(1e-12));
        CHECK(m * m - n * n == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("domain membership sets the certification flag") {
    GroupAssembly out = build_afp({sig(0, 0, 0), sig(0, 2, 2), cplx(0, 0.5), Moebius()});
    CHECK_FALSE(out.discreteness_certified);
    GroupAssembly in = build_afp({sig(0, 0, 0), sig(0, 2, 2), cplx(0, 1.5), Moebius()});
    CHECK(in.discreteness_certified);
    ContainmentDomain disc{ContainmentDomain::Kind::PuncturedDisc, 0.5};
    CHECK_FALSE(disc.contains(0.0));
    CHECK(disc.contains(0.3));
    CHECK_FALSE(disc.contains(0.6));
}
