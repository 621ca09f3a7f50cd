#pragma once

#include "ominal/cells.hpp"
#include "ominal/triangulate.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ominal {

// Family of definably compact subsets C_t exhausting a bounded cell C:
// decreasing (t' < t implies C_t subset of C_t'), with union over t > 0 all
// of C. The parameter is axis 0 of the total space.
struct ShrinkFamily {
    CellPtr cell;
    DefinableFamily family;
};

// The inductive shrink construction. Points stay put. Strict interval ends
// move inward by gamma_t = min(cap, t) where cap is half the width when both
// ends are strict and the full width when only one is (so one-sided cells
// still collapse onto their closed end for large t); closed ends do not move.
// Graphs ride the shrunk base. Bands move both walls inward by
// min((g-f)/2, t) pointwise over the shrunk base. Throws UnboundedCell.
ShrinkFamily shrink_family(const CellPtr& c);

// Face of the m-cube indexing a cover member: axis < m, low or high side.
struct FaceIndex {
    int axis = 0;
    bool high = false;

    auto operator<=>(const FaceIndex&) const = default;
};

// Open cover of `space`; members are listed in (axis, side) order and may be
// empty. Invariants (union of members = space, members open) are certified
// by the producing operations, not at construction.
struct IndexedCover {
    SemilinearSet space;
    std::vector<std::pair<FaceIndex, SemilinearSet>> members;
};

// Covers C minus C_t by 2*dim(C) open sets: the two end intervals for an
// interval, the lifted base cover for a graph, and for a band the bottom
// strip (f, f+gamma_t)_B, the top strip (g-gamma_t, g)_B, and the preimages
// of the base cover under the projection. Members indexed by faces at closed
// interval ends are empty (C minus C_t has no material there). Throws
// DegenerateSlice when C_t = C (point and fully closed cells), UnboundedCell
// for unbounded cells, NonPositiveParameter unless t > 0.
IndexedCover cube_face_cover(const CellPtr& c, const Rational& t);

// Structural acyclicity certificates for a cover: for every index subset F
// with nonempty intersection U_F, a cell that provably equals U_F.
struct CoverCertificate {
    std::map<std::vector<int>, CellPtr> intersections; // key: sorted member positions
};

// Rebuilds each nonempty intersection of cube_face_cover(c, t) as a cell
// (strips over strips are again bands, with min/max walls) and checks it
// against the symbolic intersection; throws Error on any mismatch.
CoverCertificate certify_cube_cover(const CellPtr& c, const Rational& t,
                                    const IndexedCover& cov);

// Nerve on the member positions: F is a simplex iff U_F is nonempty (decided
// symbolically). Empty members contribute no vertex.
SimplicialComplex nerve(const IndexedCover& cov);

struct CoverIsoReport {
    bool ok = true;
    std::string detail;
    std::vector<int> witness; // member positions of the first violating F
};

// For covers on one index set, verifies the three conditions under which the
// inclusion of covers induces a cohomology isomorphism: each U_i inside V_i,
// identical nonemptiness patterns, and every nonempty U_F, V_F connected and
// acyclic (single-cell recognition first, cohomology oracle second). Reports
// the first violated condition with its witness index set.
CoverIsoReport check_iso_pair(const IndexedCover& u, const IndexedCover& v);

// Cech cohomology of the constant presheaf with coefficients g: p-cochains
// assign values to connected components of (p+1)-fold intersections, with
// alternating-face differentials. Equals nerve cohomology when every
// intersection is connected. Throws UnboundedIntersection when a nonempty
// intersection is unbounded.
std::vector<AbelianGroup> cech_cover_cohomology(const IndexedCover& cov,
                                                const CoefficientGroup& g);

// Cohomology of a good cover through its nerve. Every nonempty intersection
// must carry a certificate matching it exactly; throws MissingCertificate
// otherwise.
std::vector<AbelianGroup> good_cover_cohomology(const IndexedCover& cov,
                                                const CoverCertificate& certs,
                                                const CoefficientGroup& g);

// Stabilization threshold of a decreasing family with closed slices: the
// least positive local-extremum value t0 of the exit time
// s(x) = sup{t : x in Y_t}, so that Y_t = Z_t := intersection of Y_u over
// 0 < u < t holds for all 0 < t < t0 (certified symbolically before
// returning). nullopt means no finite threshold: the family is stable at
// every t > 0. Throws NotDecreasing, NotClosedSlices.
std::optional<Rational> stabilization_t0(const DefinableFamily& fam);

} // namespace ominal
