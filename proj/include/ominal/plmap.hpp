#pragma once

#include "ominal/semilinear.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ominal {

// Piecewise affine scalar function. Pieces may overlap; where they do the
// values must agree if the function is to be continuous (checked separately,
// not at construction).
struct PLFunction {
    int dim = 0;
    struct Piece {
        ConstraintSystem domain;
        AffineForm value;
    };
    std::vector<Piece> pieces;

    PLFunction() = default;
    explicit PLFunction(int dim_) : dim(dim_) {}

    static PLFunction affine(const AffineForm& value);
    static PLFunction constant(int dim, const Rational& value);

    // Value at a point (first piece whose domain contains it); throws
    // std::out_of_range when no piece applies.
    Rational eval(const Point& point) const;
};

// Pointwise combinators; results carry refined pieces.
PLFunction pl_add(const PLFunction& a, const PLFunction& b);
PLFunction pl_sub(const PLFunction& a, const PLFunction& b);
PLFunction pl_scale(const PLFunction& a, const Rational& s);
PLFunction pl_min(const PLFunction& a, const PLFunction& b);
PLFunction pl_max(const PLFunction& a, const PLFunction& b);

// Every point of `domain` lies in some piece.
bool pl_covers(const PLFunction& f, const SemilinearSet& domain);

// Certifies continuity of f restricted to `domain`: pieces cover it and any
// two piece values agree on cl(P_i ∩ D) ∩ cl(P_j ∩ D) ∩ D. Sufficient by the
// pasting lemma for the closed cover by piece closures.
struct ContinuityReport {
    bool ok = true;
    std::string detail;
};
ContinuityReport pl_continuity(const PLFunction& f, const SemilinearSet& domain);

// {(x, y) : x ∈ base, y = f(x)} in dim+1 variables.
SemilinearSet graph_set(const PLFunction& f, const SemilinearSet& base);
// {(x, y) : x ∈ base, lower(x) < y < upper(x)}; null bound = unbounded side.
SemilinearSet band_set(const PLFunction* lower, const PLFunction* upper,
                       const SemilinearSet& base);

// Piecewise affine map between rational spaces.
struct PwAffineMap {
    int dom_dim = 0;
    int cod_dim = 0;
    struct Piece {
        ConstraintSystem domain;
        std::vector<AffineForm> rows;
    };
    std::vector<Piece> pieces;

    static PwAffineMap identity(int n);
    static PwAffineMap from_rows(std::vector<AffineForm> rows);

    Point eval(const Point& point) const; // throws std::out_of_range off-domain

    // this ∘ inner, with piece domains refined through preimages.
    PwAffineMap compose(const PwAffineMap& inner) const;
    PwAffineMap restrict(const SemilinearSet& to) const;

    // Component as a scalar piecewise function.
    PLFunction component(int j) const;
};

// Exact image { F(x) : x ∈ s ∩ dom(F) } via projection.
SemilinearSet map_image(const PwAffineMap& f, const SemilinearSet& s);
// Exact preimage { x ∈ dom(F) : F(x) ∈ s }.
SemilinearSet map_preimage(const PwAffineMap& f, const SemilinearSet& s);

// Specialize the first coordinate (the homotopy parameter) to a value.
PwAffineMap at_parameter(const PwAffineMap& f, const Rational& t);

// Affine substitution: outer(inner_1, ..., inner_n) for outer in n variables.
AffineForm compose_affine(const AffineForm& outer, const std::vector<AffineForm>& inner);

// { x : form(x) != 0 }.
SemilinearSet nonzero_locus(const AffineForm& form);

} // namespace ominal
