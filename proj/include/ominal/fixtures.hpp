#pragma once

#include "ominal/cells.hpp"
#include "ominal/semilinear.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ominal::fixtures {

// A catalogue of bounded semilinear sets, cells, and families with known
// topology, shared by the verification suites and the acceptance harness.
// Every entry is exact rational data; nothing here depends on a seed.

struct NamedCell {
    std::string name;
    CellPtr cell;
    // True when every interval factor is strictly bounded on both sides and
    // every band has two strict walls: the shrink family of such a cell
    // leaves a spherical shell C \ C_t around the compact core.
    bool open = false;
};

struct NamedSet {
    std::string name;
    SemilinearSet set;
};

// Compact pair for the Euler-characteristic identity
// chi(X) = chi(X \ C_t) + chi(C) - chi(C \ C_t): X definably compact,
// the cell C relatively open in X, t a parameter with C_t nonempty.
struct EulerPair {
    std::string name;
    SemilinearSet space;
    CellPtr cell;
    Rational t;
};

struct NamedFamily {
    std::string name;
    DefinableFamily family;
    // Expected stabilization threshold; nullopt when the family is stable at
    // every parameter value. Meaningless when violates_closedness is set.
    std::optional<Rational> expected_t0;
    bool violates_closedness = false;
};

// A definably compact set together with a hyperplane that refines its
// canonical decomposition.
struct RefinementCase {
    std::string name;
    SemilinearSet set;
    AffineForm splitter;
};

// Ten rational endpoint pairs (a, b) with a < b.
std::vector<std::pair<Rational, Rational>> interval_endpoints();

// Twenty bounded cells, dimensions 0 through 3, ambient dimensions up to 4.
std::vector<NamedCell> bounded_cells();

// At least ten definably compact sets of dimensions 0 through 3, including
// ones with nontrivial first and second cohomology.
std::vector<NamedSet> compact_sets();

// Eleven pairs for the Euler identity, exactly one of them 3-dimensional.
std::vector<EulerPair> euler_pairs();

// Five families: four with known thresholds and one whose slices are
// half-open, so the threshold computation must refuse it.
std::vector<NamedFamily> stabilization_families();

// A 2-dimensional cell in ambient dimension 4 built as a graph over a graph
// over the open unit square; the defining functions pinch toward one boundary
// point of the base.
CellPtr strange_cell();

// The closed square annulus [-2,2]^2 minus the open square (-1,1)^2, with the
// open slit [1,2] x {0} removed: a contractible set whose closure (the full
// annulus) has nontrivial first cohomology.
SemilinearSet slit_annulus();
SemilinearSet slit_annulus_closure();

// Five compact sets with splitting hyperplanes.
std::vector<RefinementCase> refinement_cases();

} // namespace ominal::fixtures
