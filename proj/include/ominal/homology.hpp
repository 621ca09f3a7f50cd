#pragma once

#include "ominal/errors.hpp"
#include "ominal/rational.hpp"

#include <string>
#include <vector>

namespace ominal {

using IntMatrix = std::vector<std::vector<Integer>>; // row-major, rows = target

IntMatrix int_matrix_product(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_identity(int n);

// u * a * v = d with u, v unimodular and d diagonal, each diagonal entry
// dividing the next.
struct SmithForm {
    IntMatrix u, d, v;
    std::vector<Integer> diagonal; // the nonzero entries, in divisibility order
};
SmithForm smith_normal_form(const IntMatrix& a);
// Nonzero diagonal only; skips the transform bookkeeping.
std::vector<Integer> smith_diagonal(const IntMatrix& a);
int int_matrix_rank(const IntMatrix& a);

// Finitely generated abelian group, invariant-factor form.
struct AbelianGroup {
    int free_rank = 0;
    std::vector<Integer> torsion; // each > 1, each dividing the next

    bool operator==(const AbelianGroup& other) const = default;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};
std::string to_string(const AbelianGroup& g);

// Coefficients for cohomology: the cokernel of an integer matrix, i.e.
// Z^generators / (column span of relations).
struct CoefficientGroup {
    int generators = 0;
    IntMatrix relations; // `generators` rows; one column per relation

    static CoefficientGroup integers();
    static CoefficientGroup cyclic(const Integer& m);
    static CoefficientGroup direct_sum(const CoefficientGroup& a, const CoefficientGroup& b);

    AbelianGroup value() const;
};

// Cochain complex of finitely generated free abelian groups;
// maps[p] : C^p -> C^{p+1} has ranks[p+1] rows and ranks[p] columns.
struct CochainComplex {
    std::vector<int> ranks;
    std::vector<IntMatrix> maps; // size ranks.size() - 1 (may be empty)

    void validate() const; // shapes and d∘d = 0; throws InvalidComplex
};

std::vector<AbelianGroup> cohomology(const CochainComplex& c);
std::vector<AbelianGroup> cohomology(const CochainComplex& c, const CoefficientGroup& g);

// Abstract simplicial complex on integer vertex labels, closed under faces.
struct SimplicialComplex {
    // faces[p] is a lexicographically sorted list of strictly increasing
    // (p+1)-tuples.
    std::vector<std::vector<std::vector<int>>> faces;

    static SimplicialComplex from_simplices(std::vector<std::vector<int>> simplices);

    int dim() const { return static_cast<int>(faces.size()) - 1; }
    bool contains(std::vector<int> simplex) const;
    // Position within faces[simplex.size() - 1], or -1.
    int index_of(const std::vector<int>& simplex) const;
    std::vector<int> vertices() const;
    SimplicialComplex full_subcomplex(const std::vector<int>& keep) const;

    CochainComplex cochain_complex() const;
    long long euler_characteristic() const;
};

std::vector<AbelianGroup> simplicial_cohomology(const SimplicialComplex& x,
                                                const CoefficientGroup& g);

// Barycentric subdivision: one vertex per simplex of x, one simplex per chain
// in its face order. The vertex for faces[p][i] is labeled
// |faces[0]| + ... + |faces[p-1]| + i.
SimplicialComplex barycentric_subdivision(const SimplicialComplex& x);

} // namespace ominal
