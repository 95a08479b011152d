// Glue between library types and the reference arithmetic.
#pragma once

#include <string>

#include "koebe/moebius.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::M2 to_m2(const koebe::Moebius& m) { return {m.a(), m.b(), m.c(), m.d()}; }
inline koebe::Moebius from_m2(const oracle::M2& m) { return {m.a, m.b, m.c, m.d}; }

inline double distance(const koebe::Moebius& m, const oracle::M2& ref) {
    return oracle::psl_distance(to_m2(m), ref);
}

inline koebe::Moebius random_moebius(std::mt19937_64& rng, double spread = 2.0) {
    return from_m2(oracle::random_moebius(rng, spread));
}

inline koebe::cplx point_value(const koebe::SpherePoint& p) { return p.value(); }

}  // namespace support
