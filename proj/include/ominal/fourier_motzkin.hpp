#pragma once

#include "ominal/affine.hpp"

#include <optional>
#include <vector>

namespace ominal {

// Projects out the given axis exactly: a point satisfies the result iff it
// extends to a solution of `system`. Equalities are used for substitution
// first; otherwise strict/weak combinations track strictness (strict + weak
// stays strict). Result lives in ambient_dim - 1 variables.
ConstraintSystem fm_project(const ConstraintSystem& system, int axis);

bool is_feasible(const ConstraintSystem& system);

// A rational solution when one exists.
std::optional<Point> sample_point(const ConstraintSystem& system);

// Exact bounds of a feasible system along one axis: (bound, attained) or
// nullopt for unbounded. Computed from the 1-d projection onto the axis.
struct AxisBound {
    Rational value;
    bool attained = false;
};
std::optional<AxisBound> axis_upper_bound(const ConstraintSystem& system, int axis);
std::optional<AxisBound> axis_lower_bound(const ConstraintSystem& system, int axis);

bool system_is_bounded(const ConstraintSystem& system);

// Vertices of the closure (strict constraints weakened), sorted lex.
// Throws UnboundedInput when the closure is unbounded; empty input gives {}.
std::vector<Point> vertices(const ConstraintSystem& system);

// --- small exact linear algebra helpers ---

using Matrix = std::vector<std::vector<Rational>>;

int matrix_rank(Matrix m);

// Solves a square system A x = b; nullopt when A is singular.
std::optional<Point> solve_square(Matrix a, Point b);

// Solves A x = b for any shape; nullopt when inconsistent. When the solution
// space is positive-dimensional an arbitrary solution is returned.
std::optional<Point> solve_linear(Matrix a, Point b);

} // namespace ominal
