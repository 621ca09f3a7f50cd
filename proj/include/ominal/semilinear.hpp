#pragma once

#include "ominal/fourier_motzkin.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ominal {

// Finite union of basic pieces (conjunctions of rational linear constraints).
// Pieces are kept feasible; an empty piece list is the empty set.
struct SemilinearSet {
    int ambient_dim = 0;
    std::vector<ConstraintSystem> pieces;

    SemilinearSet() = default;
    explicit SemilinearSet(int dim) : ambient_dim(dim) {}

    static SemilinearSet empty_set(int dim);
    static SemilinearSet whole_space(int dim);
    static SemilinearSet from_system(const ConstraintSystem& system);
    static SemilinearSet single_point(const Point& point);

    bool contains(const Point& point) const;
};

enum class BoolOp { Union, Intersection, Difference, Complement };

SemilinearSet set_union(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet set_intersection(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet set_difference(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet set_complement(const SemilinearSet& a);
// Dispatcher; `b` ignored for Complement. Throws DimensionMismatch.
SemilinearSet boolean_op(BoolOp op, const SemilinearSet& a, const SemilinearSet* b = nullptr);

bool is_empty(const SemilinearSet& x);
bool is_subset(const SemilinearSet& a, const SemilinearSet& b);
bool sets_equal(const SemilinearSet& a, const SemilinearSet& b);
std::optional<Point> sample_point(const SemilinearSet& x);

// Topological closure. Each piece is refined into the relatively open sign
// cells of its own constraint forms; the closure of such a cell is obtained
// by weakening its strict constraints.
SemilinearSet closure(const SemilinearSet& x);
SemilinearSet interior(const SemilinearSet& x);
// closure(x) minus x (the frontier attached to x).
SemilinearSet boundary(const SemilinearSet& x);

bool is_bounded(const SemilinearSet& x);
bool is_closed(const SemilinearSet& x);
bool is_definably_compact(const SemilinearSet& x);

// Max cell dimension; -1 for the empty set.
int dimension(const SemilinearSet& x);

// All constraint forms appearing in the description, raw (not deduped).
std::vector<AffineForm> constraint_forms(const SemilinearSet& x);

// Connected components, each as a semilinear set, in a deterministic order.
// Requires bounded input (throws UnboundedInput). Defined in the
// triangulation unit.
std::vector<SemilinearSet> components(const SemilinearSet& x);

// Exact projection forgetting one axis.
SemilinearSet fm_project_set(const SemilinearSet& x, int axis);

// Reindex coordinates into a larger ambient space: original axis i becomes
// axis_map[i]; unmapped coordinates are unconstrained.
SemilinearSet embed(const SemilinearSet& x, int new_dim, const std::vector<int>& axis_map);
ConstraintSystem embed_system(const ConstraintSystem& system, int new_dim,
                              const std::vector<int>& axis_map);

// Substitute coordinate `axis` with a fixed value and drop it.
SemilinearSet substitute_axis_value(const SemilinearSet& x, int axis, const Rational& value);

// A set in n+1 variables read as a family of subsets of n-space over a
// positive parameter.
struct DefinableFamily {
    SemilinearSet total_space;
    int parameter_axis = 0;
};

// Fiber of the family at t > 0; throws NonPositiveParameter otherwise.
SemilinearSet slice(const DefinableFamily& family, const Rational& t);

// Canonical description of a one-dimensional set: breakpoints plus membership
// of each breakpoint and each complementary open interval (leftmost and
// rightmost entries are the unbounded ends).
struct Breakline {
    std::vector<Rational> points;
    std::vector<bool> point_in;    // size == points.size()
    std::vector<bool> interval_in; // size == points.size() + 1
};

Breakline normalize_1d(const SemilinearSet& x);
SemilinearSet breakline_to_set(const Breakline& b);

} // namespace ominal
