#pragma once

#include "ominal/semilinear.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ominal {

// Definable ultrafilter on the line with a finite description: a realized
// rational, the germ just left/right of one, or an unbounded end.
struct NamedType1D {
    enum class Kind { MinusInfinity, LeftOf, Realized, RightOf, PlusInfinity };
    Kind kind = Kind::Realized;
    Rational value; // meaningful except at the infinities

    static NamedType1D realized(const Rational& a) { return {Kind::Realized, a}; }
    static NamedType1D right_of(const Rational& a) { return {Kind::RightOf, a}; }
    static NamedType1D left_of(const Rational& a) { return {Kind::LeftOf, a}; }
    static NamedType1D plus_infinity() { return {Kind::PlusInfinity, Rational(0)}; }
    static NamedType1D minus_infinity() { return {Kind::MinusInfinity, Rational(0)}; }

    bool operator==(const NamedType1D& other) const = default;
};

// Order along the line, with a- immediately before a and a+ immediately after.
bool type_less(const NamedType1D& a, const NamedType1D& b);

std::string to_string(const NamedType1D& t);

// p ∈ s̃, equivalently s belongs to the ultrafilter p: a realized point lies
// in s, a one-sided germ has a one-sided neighborhood inside s, an unbounded
// end has a tail inside s. Requires ambient_dim == 1.
bool type_in(const NamedType1D& p, const SemilinearSet& s);

struct TypeSpace1D {
    SemilinearSet carrier;
    std::vector<NamedType1D> types; // sorted by type_less, no duplicates
};

// The named types consistent with x: realized types at breakpoints of x and
// one interior witness per maximal interval, one-sided germs wherever the
// germ lies in x, unbounded ends iff x reaches them.
TypeSpace1D enumerate_named_types(const SemilinearSet& x);

// q ∈ Cl({p}) in the spectral topology of x̃: every definable open whose
// tilde contains q catches p. The cofinal basic neighborhoods of a named
// type reduce this to finitely many membership checks.
bool specializes(const NamedType1D& p, const NamedType1D& q, const SemilinearSet& x);

struct SubcoverResult {
    bool covered = false;
    std::vector<int> chosen;            // indices into the input family
    std::optional<NamedType1D> missing; // a type of x̃ outside the union
};

// Members must be open in x. If the union covers x, greedy dropping yields
// an inclusion-minimal subcover; otherwise reports a named type of x̃ that
// no tilde-member contains (tilde-covers of x̃ and covers of x coincide on
// constructible sets).
SubcoverResult finite_subcover(const SemilinearSet& x, const std::vector<SemilinearSet>& cover);

// Disjoint definable opens u ⊇ a, v ⊇ b cut at midpoints of the gaps
// between components. Throws NotClosed, NotDisjoint, DimensionMismatch.
std::pair<SemilinearSet, SemilinearSet> separate_closed(const SemilinearSet& a,
                                                        const SemilinearSet& b);

} // namespace ominal
