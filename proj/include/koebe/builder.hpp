#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "koebe/combinations.hpp"

namespace koebe {

// A boundary entry of a curve: a marked point or the end of another curve.
struct SlotRef {
    enum class Kind { Point, Curve };
    Kind kind = Kind::Point;
    Ramification nu;   // points
    int curve = -1;    // curve id for curve ends

    static SlotRef point(Ramification r) { return {Kind::Point, r, -1}; }
    static SlotRef curve_end(int id) { return {Kind::Curve, Ramification::infinite(), id}; }
    bool operator==(const SlotRef& o) const {
        return kind == o.kind && (kind == Kind::Point ? nu == o.nu : curve == o.curve);
    }
    std::string to_string() const;
};

enum class CurveType { FourHoled, OneHoled };  // modular part of type (0,4) or (1,1)

struct CurveSpec {
    int id = 0;
    CurveType type = CurveType::FourHoled;
    Ramification weight = Ramification::infinite();
    // Four entries (two per side) for (0,4), one entry for (1,1).
    std::vector<SlotRef> boundary;
    // True: the first side carries the first factor of the amalgamation.
    bool orientation = true;
    std::optional<int> glue_after;
    // Optional explicit pants labels per side, for ambiguous boundaries.
    std::optional<std::array<int, 2>> pants;
};

struct OrbifoldSpec {
    int genus = 0;
    std::vector<Ramification> points;
    std::vector<CurveSpec> curves;  // partition order; coordinates follow it

    int dimension() const { return 3 * genus - 3 + static_cast<int>(points.size()); }
    // Topological and combinatorial checks; throws InvalidArgument.
    void validate() const;
    // Curve indices in build order (each after its glue_after).
    std::vector<int> gluing_order() const;
};

using CoordinateVector = std::vector<cplx>;

struct Piece {
    int id = 0;
    int label = -1;  // user-provided pants label, if any
    std::array<SlotRef, 3> slots;  // cyclic order
    std::array<bool, 3> bound{};
    std::optional<CanonicalPair> pair;  // presentation starting at slot 0

    Signature signature(const OrbifoldSpec& spec) const;
};

struct CurveNode {
    int curve_index = 0;  // into OrbifoldSpec::curves
    int curve_id = 0;
    std::string step;     // "initial", "case1", "case2", "case3"
    GroupAssembly assembly;
    int piece1 = -1, slot1 = -1;  // first factor / HNN base and its rotation
    int piece2 = -1, slot2 = -1;  // second factor (amalgamations)
    // Case 2 only: conjugator carrying the second factor into position.
    std::optional<Moebius> adjoined;
};

struct KoebeGroup {
    OrbifoldSpec spec;
    std::vector<Piece> pieces;
    std::vector<CurveNode> nodes;  // gluing order
    std::vector<Moebius> generators;
    std::vector<std::string> generator_names;
    CoordinateVector input_coordinates;

    bool discreteness_certified() const;
};

KoebeGroup build_koebe(const OrbifoldSpec& spec, const CoordinateVector& coords);
// Coordinates in partition order, recomputed from node data.
CoordinateVector koebe_coordinates(const KoebeGroup& group);
// Copy of the group with every node and generator conjugated by t.
KoebeGroup conjugate_group(const KoebeGroup& group, const Moebius& t);

struct PlumbingParameter {
    int curve_id;
    cplx value;
    std::string formula;
};
std::vector<PlumbingParameter> plumbing_parameters(const KoebeGroup& group);
std::vector<PlumbingParameter> plumbing_parameters(const OrbifoldSpec& spec,
                                                   const CoordinateVector& coords);

// The product of preferred coordinates across the gluing annulus, evaluated
// at xi: z1(xi) z2(xi) for amalgamations and z(C(xi)) z(T(xi)) for HNN
// extensions. Independent of xi when the charts are consistent.
cplx plumbing_chart_product(const GroupAssembly& node, const SpherePoint& xi);
// Sample points near the gluing curve where the chart product is defined.
std::vector<SpherePoint> plumbing_sample_points(const GroupAssembly& node, int count);

struct ModularSubgroup {
    int curve_id;
    CombinationKind kind;
    std::vector<Moebius> generators;
    std::vector<int> pieces;
};
struct SharedTriangleGroup {
    int curve_before, curve_after;  // consecutive in gluing order
    int piece;
    Signature signature;
};
struct ModularDecomposition {
    std::vector<ModularSubgroup> subgroups;
    std::vector<SharedTriangleGroup> shared;
};
ModularDecomposition modular_subgroups(const KoebeGroup& group);

}  // namespace koebe
