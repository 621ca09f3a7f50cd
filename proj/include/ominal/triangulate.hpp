#pragma once

#include "ominal/homology.hpp"
#include "ominal/semilinear.hpp"

#include <vector>

namespace ominal {

// Relatively open face of a hyperplane arrangement: every non-equality
// constraint is strict, so the face is convex and equals its own relative
// interior. dim = ambient minus the rank of the equality forms.
struct ArrangementCell {
    ConstraintSystem system;
    Point sample;
    int dim = 0;
};

// Nonempty sign cells of `forms` that meet `within`, sorted by dimension
// (ties keep DFS order, so the result is deterministic). Branches disjoint
// from `within` are pruned. Callers that need every returned cell to lie
// entirely inside or outside some set must include that set's constraint
// forms in `forms`.
std::vector<ArrangementCell> arrangement_cells(int ambient_dim,
                                               const std::vector<AffineForm>& forms,
                                               const SemilinearSet& within);

// Rational triangulation of the closure of a bounded union, adapted to each
// input: the relative interior of every simplex lies inside a single
// arrangement cell, hence entirely inside or outside each input. Faces of
// dimension >= 2 are coned from their barycenter over the triangulated
// boundary; 1-faces are single edges, 0-faces are vertices.
struct Triangulation {
    int ambient_dim = 0;
    std::vector<ArrangementCell> cells; // sorted by dimension
    std::vector<int> cell_vertex;       // vertex label of each cell, -1 for 1-faces
    std::vector<Point> vertex_points;   // position of each vertex label
    SimplicialComplex complex;
    // tags[k][p][i]: relative interior of complex.faces[p][i] lies in input k.
    std::vector<std::vector<std::vector<bool>>> tags;

    // Average of the simplex's vertex positions; lies in its relative interior.
    Point barycenter(const std::vector<int>& simplex) const;
};

// Throws UnboundedInput when any input is unbounded.
Triangulation triangulate(const std::vector<SemilinearSet>& sets);

// H^*(p \ q; g) for closed bounded p >= q (q may be empty): triangulates
// {p, q}, stellar-subdivides until q's carrier is a full subcomplex, and
// takes the full subcomplex on the vertices outside q — a deformation
// retract of |p| \ |q| — shrunk by free-face collapses before the algebra.
// Throws NotCompact, NotNested.
std::vector<AbelianGroup> oracle_cohomology(const SemilinearSet& p, const SemilinearSet& q,
                                            const CoefficientGroup& g);

// H^*(s; g) for a bounded locally closed set, computed from the compact pair
// (closure(s), closure(s) \ s). Throws UnboundedInput when s is unbounded and
// NotClosed when closure(s) \ s is not closed.
std::vector<AbelianGroup> set_cohomology(const SemilinearSet& s, const CoefficientGroup& g);

} // namespace ominal
