#include "ominal/typespace.hpp"

#include "ominal/errors.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

using namespace ominal;

namespace {

Rational rat(int num, int den = 1) { return Rational(num, den); }

const AffineForm X1 = AffineForm::variable(1, 0);

SemilinearSet seg(const Rational& a, const Rational& b, bool lo_closed, bool hi_closed) {
    ConstraintSystem sys(1);
    const AffineForm lo = X1 - AffineForm::constant_form(1, a);
    const AffineForm hi = X1 - AffineForm::constant_form(1, b);
    lo_closed ? sys.ge(lo) : sys.gt(lo);
    hi_closed ? sys.le(hi) : sys.lt(hi);
    return SemilinearSet::from_system(sys);
}

SemilinearSet closed_seg(const Rational& a, const Rational& b) { return seg(a, b, true, true); }
SemilinearSet open_seg(const Rational& a, const Rational& b) { return seg(a, b, false, false); }

SemilinearSet pt(const Rational& a) { return SemilinearSet::single_point({a}); }

SemilinearSet above(const Rational& a, bool closed) {
    ConstraintSystem sys(1);
    const AffineForm f = X1 - AffineForm::constant_form(1, a);
    closed ? sys.ge(f) : sys.gt(f);
    return SemilinearSet::from_system(sys);
}

SemilinearSet below(const Rational& a, bool closed) {
    ConstraintSystem sys(1);
    const AffineForm f = X1 - AffineForm::constant_form(1, a);
    closed ? sys.le(f) : sys.lt(f);
    return SemilinearSet::from_system(sys);
}

// [0,1) ∪ {2} ∪ (3,∞): one run with a half-open end, an isolated point, and
// an unbounded tail — exercises every enumeration rule at once.
SemilinearSet mixed_fixture() {
    return set_union(set_union(seg(0, 1, true, false), pt(2)), above(3, false));
}

std::string joined(const std::vector<NamedType1D>& types) {
    std::string out;
    for (const auto& t : types) {
        if (!out.empty()) out += ", ";
        out += to_string(t);
    }
    return out;
}

SemilinearSet union_of(const std::vector<SemilinearSet>& members, const std::vector<int>& idx) {
    SemilinearSet out = SemilinearSet::empty_set(1);
    for (int i : idx) out = set_union(out, members[static_cast<size_t>(i)]);
    return out;
}

// Every chosen member is needed: dropping any one loses coverage.
bool irredundant(const SemilinearSet& x, const std::vector<SemilinearSet>& members,
                 const std::vector<int>& chosen) {
    for (size_t k = 0; k < chosen.size(); ++k) {
        std::vector<int> rest;
        for (size_t j = 0; j < chosen.size(); ++j)
            if (j != k) rest.push_back(chosen[j]);
        if (is_subset(x, union_of(members, rest))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("named types are ordered along the line with germs beside their anchor") {
    const auto m = NamedType1D::minus_infinity();
    const auto l = NamedType1D::left_of(0);
    const auto r = NamedType1D::realized(0);
    const auto g = NamedType1D::right_of(0);
    const auto p = NamedType1D::plus_infinity();
    const std::vector<NamedType1D> order = {m, l, r, g, NamedType1D::left_of(1), p};
    for (size_t i = 0; i < order.size(); ++i) {
        for (size_t j = 0; j < order.size(); ++j) {
            CHECK(type_less(order[i], order[j]) == (i < j));
        }
    }
    CHECK(to_string(m) == "minus_infinity");
    CHECK(to_string(p) == "plus_infinity");
    CHECK(to_string(NamedType1D::realized(rat(1, 2))) == "realized(1/2)");
    CHECK(to_string(NamedType1D::right_of(-2)) == "right_of(-2)");
    CHECK(to_string(NamedType1D::left_of(rat(3, 4))) == "left_of(3/4)");
}

TEST_CASE("membership of named types in one-dimensional sets") {
    const SemilinearSet open01 = open_seg(0, 1);
    CHECK(type_in(NamedType1D::right_of(0), open01));
    CHECK_FALSE(type_in(NamedType1D::left_of(0), open01));
    CHECK_FALSE(type_in(NamedType1D::realized(0), open01));
    CHECK(type_in(NamedType1D::left_of(1), open01));
    CHECK_FALSE(type_in(NamedType1D::right_of(1), open01));

    // Anchors that are not breakpoints of the set still resolve correctly.
    const SemilinearSet closed01 = closed_seg(0, 1);
    CHECK(type_in(NamedType1D::realized(rat(1, 3)), closed01));
    CHECK(type_in(NamedType1D::right_of(rat(1, 3)), closed01));
    CHECK(type_in(NamedType1D::left_of(rat(1, 3)), closed01));

    CHECK(type_in(NamedType1D::plus_infinity(), above(5, false)));
    CHECK_FALSE(type_in(NamedType1D::minus_infinity(), above(5, false)));
    CHECK(type_in(NamedType1D::minus_infinity(), below(5, true)));
    CHECK_FALSE(type_in(NamedType1D::plus_infinity(), below(5, true)));

    const SemilinearSet none = SemilinearSet::empty_set(1);
    const SemilinearSet line = SemilinearSet::whole_space(1);
    for (const auto& p : {NamedType1D::minus_infinity(), NamedType1D::left_of(7),
                          NamedType1D::realized(7), NamedType1D::right_of(7),
                          NamedType1D::plus_infinity()}) {
        CHECK_FALSE(type_in(p, none));
        CHECK(type_in(p, line));
    }

    CHECK_THROWS_AS(type_in(NamedType1D::realized(0), SemilinearSet::whole_space(2)),
                    DimensionMismatch);
}

TEST_CASE("named types decide boolean combinations like ultrafilters") {
    std::vector<NamedType1D> pool = enumerate_named_types(mixed_fixture()).types;
    for (const auto& t : enumerate_named_types(SemilinearSet::whole_space(1)).types)
        pool.push_back(t);

    const std::vector<SemilinearSet> sets = {
        closed_seg(0, 1),  open_seg(0, 1),          pt(2),
        mixed_fixture(),   below(0, false),         seg(rat(1, 2), 3, false, true),
        SemilinearSet::empty_set(1),                SemilinearSet::whole_space(1)};

    for (const auto& p : pool) {
        for (const auto& a : sets) {
            CHECK(type_in(p, set_complement(a)) == !type_in(p, a));
            for (const auto& b : sets) {
                CHECK(type_in(p, set_union(a, b)) == (type_in(p, a) || type_in(p, b)));
                CHECK(type_in(p, set_intersection(a, b)) == (type_in(p, a) && type_in(p, b)));
            }
        }
    }
}

TEST_CASE("enumeration lists breakpoint, witness, germ, and end types in order") {
    const TypeSpace1D s1 = enumerate_named_types(closed_seg(0, 1));
    CHECK(sets_equal(s1.carrier, closed_seg(0, 1)));
    CHECK(joined(s1.types) ==
          "realized(0), right_of(0), left_of(1/2), realized(1/2), right_of(1/2), "
          "left_of(1), realized(1)");

    CHECK(joined(enumerate_named_types(SemilinearSet::whole_space(1)).types) ==
          "minus_infinity, left_of(0), realized(0), right_of(0), plus_infinity");

    CHECK(joined(enumerate_named_types(pt(2)).types) == "realized(2)");

    CHECK(joined(enumerate_named_types(open_seg(0, 1)).types) ==
          "right_of(0), left_of(1/2), realized(1/2), right_of(1/2), left_of(1)");

    CHECK(joined(enumerate_named_types(mixed_fixture()).types) ==
          "realized(0), right_of(0), left_of(1/2), realized(1/2), right_of(1/2), "
          "left_of(1), realized(2), right_of(3), left_of(4), realized(4), right_of(4), "
          "plus_infinity");

    CHECK(joined(enumerate_named_types(below(2, true)).types) ==
          "minus_infinity, left_of(1), realized(1), right_of(1), left_of(2), realized(2)");

    CHECK(enumerate_named_types(SemilinearSet::empty_set(1)).types.empty());

    // Listed types really are types of the carrier, sorted without repeats.
    for (const auto& x : {closed_seg(0, 1), mixed_fixture(), below(2, true)}) {
        const TypeSpace1D sp = enumerate_named_types(x);
        for (size_t i = 0; i < sp.types.size(); ++i) {
            CHECK(type_in(sp.types[i], x));
            if (i + 1 < sp.types.size()) CHECK(type_less(sp.types[i], sp.types[i + 1]));
        }
    }

    CHECK_THROWS_AS(enumerate_named_types(SemilinearSet::whole_space(2)), DimensionMismatch);
}

TEST_CASE("specialization matches closure in the spectral topology") {
    const SemilinearSet x = closed_seg(0, 1);
    const auto types = enumerate_named_types(x).types;

    CHECK(specializes(NamedType1D::right_of(0), NamedType1D::realized(0), x));
    CHECK(specializes(NamedType1D::left_of(1), NamedType1D::realized(1), x));
    CHECK_FALSE(specializes(NamedType1D::realized(0), NamedType1D::realized(1), x));
    CHECK_FALSE(specializes(NamedType1D::right_of(0), NamedType1D::realized(rat(1, 2)), x));
    // Types outside the space never participate.
    CHECK_FALSE(specializes(NamedType1D::realized(5), NamedType1D::realized(5), x));
    CHECK_FALSE(specializes(NamedType1D::right_of(0), NamedType1D::realized(0), open_seg(0, 1)));

    // Cl(a⁺) = {a⁺, a}; realized points are closed.
    for (const auto& p : types) {
        std::vector<NamedType1D> cl;
        for (const auto& q : types)
            if (specializes(p, q, x)) cl.push_back(q);
        if (p.kind == NamedType1D::Kind::Realized) {
            REQUIRE(cl.size() == 1);
            CHECK(cl[0] == p);
        } else {
            REQUIRE(cl.size() == 2);
            CHECK(((cl[0] == p || cl[1] == p)));
            const NamedType1D anchor = NamedType1D::realized(p.value);
            CHECK(((cl[0] == anchor || cl[1] == anchor)));
        }
    }

    // Reflexive and transitive on every fixture's named types.
    for (const auto& space : {closed_seg(0, 1), mixed_fixture(), SemilinearSet::whole_space(1)}) {
        const auto ts = enumerate_named_types(space).types;
        for (const auto& p : ts) {
            CHECK(specializes(p, p, space));
            for (const auto& q : ts) {
                for (const auto& r : ts) {
                    if (specializes(p, q, space) && specializes(q, r, space))
                        CHECK(specializes(p, r, space));
                }
            }
        }
    }

    // Unbounded ends are closed points: they admit no realized specialization.
    const SemilinearSet line = SemilinearSet::whole_space(1);
    CHECK_FALSE(specializes(NamedType1D::plus_infinity(), NamedType1D::realized(0), line));
    CHECK_FALSE(specializes(NamedType1D::minus_infinity(), NamedType1D::realized(0), line));
    CHECK(specializes(NamedType1D::plus_infinity(), NamedType1D::plus_infinity(), line));

    // Definably compact carrier: every named type specializes to a realized point.
    for (const auto& space : {closed_seg(0, 1), set_union(closed_seg(0, 1), closed_seg(2, 3))}) {
        for (const auto& p : enumerate_named_types(space).types) {
            bool lands = false;
            for (const auto& q : enumerate_named_types(space).types)
                lands = lands || (q.kind == NamedType1D::Kind::Realized && specializes(p, q, space));
            CHECK(lands);
        }
    }
    // ... and the open interval shows why compactness is needed: the germ at
    // the missing endpoint has nowhere to land.
    const SemilinearSet open01 = open_seg(0, 1);
    for (const auto& q : enumerate_named_types(open01).types) {
        if (q.kind == NamedType1D::Kind::Realized)
            CHECK_FALSE(specializes(NamedType1D::right_of(0), q, open01));
    }
}

TEST_CASE("the line's specialization poset forbids the four-point non-taut pattern") {
    // Reference poset: a < b, c < d with b, c incomparable; closed = downward
    // closed.  The smallest open set around {b,c} is {b,c,d} — connected,
    // while {b,c} is not, so restricting cohomology from neighborhoods loses
    // the second H⁰ generator.  The pattern needs one point generizing two
    // incomparable closed points.
    enum { A, B, C, D };
    const bool leq[4][4] = {{true, true, true, true},
                            {false, true, false, true},
                            {false, false, true, true},
                            {false, false, false, true}};
    CHECK((leq[A][D] && !leq[B][C] && !leq[C][B]));
    // {b,c} is not downward closed (a is below both), so it is not closed.
    CHECK((leq[A][B] && leq[A][C]));
    // Smallest upward-closed superset of {b,c} pulls in d and nothing else.
    std::vector<int> up;
    for (int v : {A, B, C, D}) {
        bool in = false;
        for (int w : {B, C}) in = in || leq[w][v];
        if (in) up.push_back(v);
    }
    CHECK(up == std::vector<int>{B, C, D});

    // Named types on the line never realize that shape: each type specializes
    // to at most one realized point, its own anchor.
    for (const auto& space :
         {closed_seg(0, 1), mixed_fixture(), SemilinearSet::whole_space(1)}) {
        for (const auto& p : enumerate_named_types(space).types) {
            int realized_targets = 0;
            for (const auto& q : enumerate_named_types(space).types) {
                if (q.kind == NamedType1D::Kind::Realized && specializes(p, q, space)) {
                    ++realized_targets;
                    CHECK(q.value == p.value);
                }
            }
            CHECK(realized_targets <= 1);
        }
    }
}

TEST_CASE("finite subcovers are extracted or refuted with a witness type") {
    const SemilinearSet x = closed_seg(0, 1);

    SUBCASE("both members of a two-member cover are needed") {
        const std::vector<SemilinearSet> cover = {open_seg(-1, 1), open_seg(0, 2)};
        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE(r.covered);
        CHECK(r.chosen == std::vector<int>{0, 1});
        CHECK_FALSE(r.missing.has_value());
        CHECK(is_subset(x, union_of(cover, r.chosen)));
        CHECK(irredundant(x, cover, r.chosen));
    }

    SUBCASE("an exhausted open interval refuses a non-exhausting cover") {
        const SemilinearSet open01 = open_seg(0, 1);
        const std::vector<SemilinearSet> cover = {open_seg(0, rat(1, 2)), open_seg(0, rat(2, 3)),
                                                  open_seg(0, rat(3, 4))};
        const SubcoverResult r = finite_subcover(open01, cover);
        REQUIRE_FALSE(r.covered);
        CHECK(r.chosen.empty());
        REQUIRE(r.missing.has_value());
        CHECK(*r.missing == NamedType1D::left_of(1));
    }

    SUBCASE("a point gap is reported as a realized witness") {
        const std::vector<SemilinearSet> cover = {open_seg(-1, rat(1, 3)), open_seg(rat(1, 3), 2)};
        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE_FALSE(r.covered);
        REQUIRE(r.missing.has_value());
        CHECK(*r.missing == NamedType1D::realized(rat(1, 3)));
    }

    SUBCASE("unbounded remainders escape through a germ or an end") {
        const SubcoverResult r = finite_subcover(above(0, true), {open_seg(-1, 10)});
        REQUIRE_FALSE(r.covered);
        REQUIRE(r.missing.has_value());
        CHECK(*r.missing == NamedType1D::right_of(10));

        const SubcoverResult w =
            finite_subcover(SemilinearSet::whole_space(1), {open_seg(-5, 5)});
        REQUIRE_FALSE(w.covered);
        REQUIRE(w.missing.has_value());
        CHECK(*w.missing == NamedType1D::left_of(-5));
    }

    SUBCASE("members may have several pieces; junk members are dropped") {
        const SemilinearSet x03 = closed_seg(0, 3);
        const std::vector<SemilinearSet> cover = {
            set_union(open_seg(-1, 1), open_seg(2, 4)), open_seg(rat(1, 2), rat(5, 2)),
            open_seg(10, 11)};
        const SubcoverResult r = finite_subcover(x03, cover);
        REQUIRE(r.covered);
        CHECK(r.chosen == std::vector<int>{0, 1});
        CHECK(irredundant(x03, cover, r.chosen));
    }

    SUBCASE("a missing witness is a type of x avoided by every member") {
        const std::vector<SemilinearSet> cover = {open_seg(-2, rat(1, 4)),
                                                  open_seg(rat(1, 8), rat(3, 4))};
        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE_FALSE(r.covered);
        REQUIRE(r.missing.has_value());
        CHECK(type_in(*r.missing, x));
        for (const auto& m : cover) CHECK_FALSE(type_in(*r.missing, m));
    }
}

TEST_CASE("the greedy sweep matches the classic interval sweep oracle") {
    const SemilinearSet x = closed_seg(0, 1);

    SUBCASE("eleven overlapping windows shrink to four") {
        std::vector<SemilinearSet> cover;
        for (int k = 0; k <= 10; ++k)
            cover.push_back(open_seg(rat(k, 10) - rat(1, 5), rat(k, 10) + rat(1, 5)));
        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE(r.covered);
        CHECK(r.chosen == std::vector<int>{1, 4, 7, 9});
        CHECK(is_subset(x, union_of(cover, r.chosen)));
        CHECK(irredundant(x, cover, r.chosen));
    }

    SUBCASE("fifty redundant windows") {
        std::vector<Rational> lo, hi;
        std::vector<SemilinearSet> cover;
        for (int k = 0; k < 50; ++k) {
            lo.push_back(rat(k - 2, 50));
            hi.push_back(rat(k + 3, 50));
            cover.push_back(open_seg(lo.back(), hi.back()));
        }
        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE(r.covered);

        // Independent sweep: from the frontier, take the member reaching
        // furthest right; count the steps.
        Rational f = 0;
        size_t steps = 0;
        while (f <= 1) {
            Rational best = f;
            for (size_t k = 0; k < 50; ++k) {
                if (lo[k] < f && f < hi[k] && hi[k] > best) best = hi[k];
            }
            REQUIRE(best > f);
            f = best;
            ++steps;
        }
        CHECK(steps == 13);
        CHECK(r.chosen.size() == steps);
        CHECK(irredundant(x, cover, r.chosen));

        // The stated budget: no more members than breakpoint gaps inside x.
        std::vector<Rational> cuts = {Rational(0), Rational(1)};
        for (int k = 0; k < 50; ++k) {
            for (const Rational& e : {lo[static_cast<size_t>(k)], hi[static_cast<size_t>(k)]})
                if (e > 0 && e < 1) cuts.push_back(e);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        CHECK(r.chosen.size() <= cuts.size() - 1);
    }
}

TEST_CASE("random covers of compact sets always shrink to irredundant subcovers") {
    testing::Rng rng(4241);
    for (int trial = 0; trial < 25; ++trial) {
        // Carrier: one to three closed segments inside [-4, 4].
        SemilinearSet x = SemilinearSet::empty_set(1);
        const int pieces = rng.integer(1, 3);
        for (int i = 0; i < pieces; ++i) {
            const Rational a = rng.rational(4, 2);
            x = set_union(x, closed_seg(a, a + rat(rng.integer(0, 3), 2)));
        }

        std::vector<SemilinearSet> cover;
        for (int i = 0; i < 5; ++i) {
            const Rational a = rng.rational(5, 2);
            SemilinearSet m = open_seg(a, a + rat(rng.integer(1, 6), 2));
            if (rng.integer(0, 2) == 0) {
                const Rational b = rng.rational(5, 2);
                m = set_union(m, open_seg(b, b + rat(rng.integer(1, 4), 2)));
            }
            cover.push_back(m);
        }
        // One guaranteed blanket, hidden at a random position.
        cover.insert(cover.begin() + rng.integer(0, 5), open_seg(-7, 7));

        const SubcoverResult r = finite_subcover(x, cover);
        REQUIRE(r.covered);
        CHECK(is_subset(x, union_of(cover, r.chosen)));
        CHECK(irredundant(x, cover, r.chosen));
        CHECK(std::is_sorted(r.chosen.begin(), r.chosen.end()));

        // Drop the blanket and retry: either still covered, or the witness
        // type is genuinely missed by every member.
        std::vector<SemilinearSet> partial = cover;
        for (size_t i = 0; i < partial.size(); ++i) {
            if (sets_equal(partial[i], open_seg(-7, 7))) {
                partial.erase(partial.begin() + static_cast<long>(i));
                break;
            }
        }
        const SubcoverResult q = finite_subcover(x, partial);
        if (q.covered) {
            CHECK(is_subset(x, union_of(partial, q.chosen)));
        } else {
            REQUIRE(q.missing.has_value());
            CHECK(type_in(*q.missing, x));
            for (const auto& m : partial) CHECK_FALSE(type_in(*q.missing, m));
        }
    }
}

TEST_CASE("closed separation places cuts at gap midpoints") {
    SUBCASE("two segments split at the midpoint of their gap") {
        const auto [u, v] = separate_closed(closed_seg(0, 1), closed_seg(2, 3));
        CHECK(sets_equal(u, below(rat(3, 2), false)));
        CHECK(sets_equal(v, above(rat(3, 2), false)));
    }

    SUBCASE("a point against a two-piece closed set") {
        const auto [u, v] = separate_closed(pt(0), set_union(pt(1), closed_seg(2, 3)));
        CHECK(sets_equal(u, below(rat(1, 2), false)));
        CHECK(sets_equal(v, above(rat(1, 2), false)));
    }

    SUBCASE("interleaved components cut gap by gap") {
        const SemilinearSet a = set_union(pt(0), closed_seg(4, 5));
        const SemilinearSet b = set_union(closed_seg(1, 2), pt(7));
        const auto [u, v] = separate_closed(a, b);
        CHECK(sets_equal(u, set_union(below(rat(1, 2), false), open_seg(3, 6))));
        CHECK(sets_equal(v, set_union(open_seg(rat(1, 2), 3), above(6, false))));
    }

    SUBCASE("an empty side receives the empty open set") {
        const auto [u, v] = separate_closed(closed_seg(0, 1), SemilinearSet::empty_set(1));
        CHECK(sets_equal(u, SemilinearSet::whole_space(1)));
        CHECK(is_empty(v));
    }

    SUBCASE("violated preconditions are rejected") {
        CHECK_THROWS_AS(separate_closed(closed_seg(0, 2), closed_seg(1, 3)), NotDisjoint);
        CHECK_THROWS_AS(separate_closed(open_seg(0, 1), closed_seg(2, 3)), NotClosed);
        CHECK_THROWS_AS(separate_closed(closed_seg(0, 1), open_seg(2, 3)), NotClosed);
        // Closedness is vetted before disjointness.
        CHECK_THROWS_AS(separate_closed(open_seg(0, 1), open_seg(0, 1)), NotClosed);
        CHECK_THROWS_AS(separate_closed(SemilinearSet::whole_space(2), SemilinearSet::whole_space(2)),
                        DimensionMismatch);
    }

    SUBCASE("random disjoint closed pairs separate symbolically") {
        testing::Rng rng(515);
        for (int trial = 0; trial < 20; ++trial) {
            // Disjoint closed blocks on a coarse grid, dealt to two owners.
            SemilinearSet a = SemilinearSet::empty_set(1);
            SemilinearSet b = SemilinearSet::empty_set(1);
            Rational cursor = rat(rng.integer(-8, -5));
            for (int blocks = rng.integer(2, 4); blocks > 0; --blocks) {
                const Rational width = rat(rng.integer(0, 2));
                const SemilinearSet block =
                    width == 0 ? pt(cursor) : closed_seg(cursor, cursor + width);
                if (rng.integer(0, 1) == 0) {
                    a = set_union(a, block);
                } else {
                    b = set_union(b, block);
                }
                cursor += width + rat(rng.integer(1, 3));
            }
            if (is_empty(a) || is_empty(b)) continue;

            const auto [u, v] = separate_closed(a, b);
            CHECK(is_subset(a, u));
            CHECK(is_subset(b, v));
            CHECK(is_empty(set_intersection(u, v)));
            CHECK(sets_equal(interior(u), u));
            CHECK(sets_equal(interior(v), v));
        }
    }
}
