#include "ominal/cover.hpp"

#include "ominal/errors.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <algorithm>
#include <vector>

using namespace ominal;

namespace {

Rational rat(int num, int den = 1) { return Rational(num, den); }

AbelianGroup grp(int rank, std::vector<Integer> torsion = {}) {
    AbelianGroup g;
    g.free_rank = rank;
    g.torsion = std::move(torsion);
    return g;
}

AbelianGroup group_at(const std::vector<AbelianGroup>& groups, size_t p) {
    return p < groups.size() ? groups[p] : AbelianGroup{};
}

SemilinearSet open_seg(const Rational& a, const Rational& b) {
    ConstraintSystem sys(1);
    sys.gt(lin(1, {{0, 1}}, -a));
    sys.lt(lin(1, {{0, 1}}, -b));
    return SemilinearSet::from_system(sys);
}

SemilinearSet closed_seg(const Rational& a, const Rational& b) {
    ConstraintSystem sys(1);
    sys.ge(lin(1, {{0, 1}}, -a));
    sys.le(lin(1, {{0, 1}}, -b));
    return SemilinearSet::from_system(sys);
}

// Axis-aligned 2-D box, strict on all sides unless closed = true.
SemilinearSet box2(const Rational& x0, const Rational& x1, const Rational& y0,
                   const Rational& y1, bool closed = false) {
    ConstraintSystem sys(2);
    const AffineForm x = AffineForm::variable(2, 0);
    const AffineForm y = AffineForm::variable(2, 1);
    if (closed) {
        sys.ge(x - AffineForm::constant_form(2, x0));
        sys.le(x - AffineForm::constant_form(2, x1));
        sys.ge(y - AffineForm::constant_form(2, y0));
        sys.le(y - AffineForm::constant_form(2, y1));
    } else {
        sys.gt(x - AffineForm::constant_form(2, x0));
        sys.lt(x - AffineForm::constant_form(2, x1));
        sys.gt(y - AffineForm::constant_form(2, y0));
        sys.lt(y - AffineForm::constant_form(2, y1));
    }
    return SemilinearSet::from_system(sys);
}

CellPtr interval_cell(const Rational& a, const Rational& b, bool lo_strict = true,
                      bool hi_strict = true) {
    return make_interval_cell(a, b, lo_strict, hi_strict);
}

// Band with constant walls over a base cell.
CellPtr const_band(const CellPtr& base, const Rational& lo, const Rational& hi) {
    const int d = base->ambient_dim;
    return make_band_cell(base, PLFunction::constant(d, lo), PLFunction::constant(d, hi));
}

CellPtr unit_band() { return const_band(interval_cell(rat(0), rat(1)), rat(0), rat(1)); }

// Band over (0,1) with walls y = 0 and y = x + 1.
CellPtr slant_band() {
    return make_band_cell(interval_cell(rat(0), rat(1)), PLFunction::constant(1, rat(0)),
                          PLFunction::affine(lin(1, {{0, 1}}, 1)));
}

CellPtr cube_cell() { return const_band(unit_band(), rat(0), rat(1)); }

CellPtr tesseract_cell() { return const_band(cube_cell(), rat(0), rat(1)); }

// Nerve of the closed faces of the m-cube: one vertex per face (position
// 2*axis + side), a subset is a simplex iff it avoids every opposite pair.
SimplicialComplex cube_face_oracle(int m) {
    std::vector<std::vector<int>> tops;
    for (int pick = 0; pick < (1 << m); ++pick) {
        std::vector<int> simplex;
        for (int axis = 0; axis < m; ++axis) simplex.push_back(2 * axis + ((pick >> axis) & 1));
        tops.push_back(simplex);
    }
    return SimplicialComplex::from_simplices(tops);
}

SemilinearSet fold_intersection(const IndexedCover& cov, const std::vector<int>& positions) {
    SemilinearSet acc = cov.members[static_cast<size_t>(positions.front())].second;
    for (size_t i = 1; i < positions.size(); ++i) {
        acc = set_intersection(acc, cov.members[static_cast<size_t>(positions[i])].second);
    }
    return acc;
}

std::vector<std::vector<int>> nonempty_subsets(const IndexedCover& cov) {
    std::vector<std::vector<int>> out;
    const int k = static_cast<int>(cov.members.size());
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, const SemilinearSet* running) -> void {
        for (int i = start; i < k; ++i) {
            SemilinearSet next = running ? set_intersection(*running, cov.members[static_cast<size_t>(i)].second)
                                         : cov.members[static_cast<size_t>(i)].second;
            if (is_empty(next)) continue;
            cur.push_back(i);
            out.push_back(cur);
            self(self, i + 1, &next);
            cur.pop_back();
        }
    };
    rec(rec, 0, nullptr);
    return out;
}

// {(t, t', x) : 0 < t' < t, x in C_t, x not in C_t'} is empty. Independent of
// the library's own validation path.
bool family_monotone(const DefinableFamily& fam) {
    const int n = fam.total_space.ambient_dim;
    const int d = n + 1;
    std::vector<int> at_t{0}, at_tp{1};
    for (int i = 1; i < n; ++i) {
        at_t.push_back(i + 1);
        at_tp.push_back(i + 1);
    }
    ConstraintSystem order(d);
    order.gt(AffineForm::variable(d, 1));
    order.lt(AffineForm::variable(d, 1) - AffineForm::variable(d, 0));
    SemilinearSet bad = set_intersection(embed(fam.total_space, d, at_t),
                                         set_complement(embed(fam.total_space, d, at_tp)));
    bad = set_intersection(bad, SemilinearSet::from_system(order));
    return is_empty(bad);
}

// Union of all slices over t > 0, by projecting the parameter away.
SemilinearSet family_union(const DefinableFamily& fam) {
    ConstraintSystem pos(fam.total_space.ambient_dim);
    pos.gt(AffineForm::variable(fam.total_space.ambient_dim, 0));
    return fm_project_set(set_intersection(fam.total_space, SemilinearSet::from_system(pos)), 0);
}

// Relatively open in `space`: no member point is a limit of its complement.
bool open_in(const SemilinearSet& space, const SemilinearSet& s) {
    return is_empty(set_intersection(s, closure(set_difference(space, s))));
}

// Random fully open tower: interval base, then band levels with walls kept
// strictly apart by construction.
CellPtr random_tower(testing::Rng& rng, int dim) {
    const Rational a = rng.rational();
    CellPtr cell = interval_cell(a, a + rat(rng.integer(1, 3)));
    for (int level = 1; level < dim; ++level) {
        const int d = cell->ambient_dim;
        const Rational lo_off = rng.rational();
        if (rng.integer(0, 2) == 0) {
            // Parallel slanted walls stay strictly apart everywhere.
            const Rational slope = rat(rng.integer(-1, 1));
            const AffineForm lower = lin(d, {{0, slope}}, lo_off);
            const AffineForm upper = lin(d, {{0, slope}}, lo_off + rat(rng.integer(1, 2)));
            cell = make_band_cell(cell, PLFunction::affine(lower), PLFunction::affine(upper));
        } else {
            cell = const_band(cell, lo_off, lo_off + rat(rng.integer(1, 3)));
        }
    }
    return cell;
}

} // namespace

TEST_CASE("shrink family: frozen interval and point slices") {
    const ShrinkFamily unit = shrink_family(interval_cell(rat(0), rat(1)));
    CHECK(unit.family.parameter_axis == 0);
    CHECK(sets_equal(slice(unit.family, rat(1, 4)), closed_seg(rat(1, 4), rat(3, 4))));
    CHECK(sets_equal(slice(unit.family, rat(1, 2)), SemilinearSet::single_point({rat(1, 2)})));
    CHECK(sets_equal(slice(unit.family, rat(10)), SemilinearSet::single_point({rat(1, 2)})));

    const ShrinkFamily two3 = shrink_family(interval_cell(rat(2), rat(3)));
    CHECK(sets_equal(slice(two3.family, rat(10)), SemilinearSet::single_point({rat(5, 2)})));

    const CellPtr pt = make_point_cell(rat(1, 2));
    const ShrinkFamily stay = shrink_family(pt);
    CHECK(sets_equal(slice(stay.family, rat(1, 3)), pt->underlying));
    CHECK(sets_equal(slice(stay.family, rat(7)), pt->underlying));

    // Closed ends do not move; a single open end eats the whole width.
    const ShrinkFamily half = shrink_family(interval_cell(rat(0), rat(1), false, true));
    CHECK(sets_equal(slice(half.family, rat(1, 4)), closed_seg(rat(0), rat(3, 4))));
    CHECK(sets_equal(slice(half.family, rat(2)), SemilinearSet::single_point({rat(0)})));

    const ShrinkFamily closed = shrink_family(interval_cell(rat(0), rat(1), false, false));
    CHECK(sets_equal(slice(closed.family, rat(1, 3)), closed_seg(rat(0), rat(1))));
    CHECK(sets_equal(slice(closed.family, rat(7)), closed_seg(rat(0), rat(1))));

    // Pointwise band clamp: over the slant band the fiber midpoint at x = 1/2
    // is (1/2, 3/4), and a large t collapses the whole cell onto it.
    const ShrinkFamily slant = shrink_family(slant_band());
    CHECK(sets_equal(slice(slant.family, rat(2)),
                     SemilinearSet::single_point({rat(1, 2), rat(3, 4)})));

    CHECK_THROWS_AS((void)shrink_family(make_interval_cell(rat(0), std::nullopt)), UnboundedCell);
    CHECK_THROWS_AS((void)shrink_family(make_band_cell(interval_cell(rat(0), rat(1)),
                                                       PLFunction::constant(1, rat(0)),
                                                       std::nullopt)),
                    UnboundedCell);
}

TEST_CASE("shrink family: exhaustion, monotonicity, compact slices") {
    std::vector<CellPtr> fixtures = {
        interval_cell(rat(0), rat(1)),
        interval_cell(rat(-2), rat(5)),
        interval_cell(rat(0), rat(1), false, true),
        make_point_cell(rat(3)),
        unit_band(),
        slant_band(),
        cube_cell(),
        make_graph_cell(interval_cell(rat(0), rat(1)), PLFunction::affine(lin(1, {{0, rat(1, 2)}}))),
        const_band(make_point_cell(rat(1, 2)), rat(0), rat(1)),
    };
    testing::Rng rng(2301);
    for (int i = 0; i < 4; ++i) fixtures.push_back(random_tower(rng, rng.integer(2, 3)));

    for (const CellPtr& cell : fixtures) {
        CAPTURE(cell->ambient_dim);
        CAPTURE(static_cast<int>(cell->kind));
        const ShrinkFamily fam = shrink_family(cell);
        CHECK(sets_equal(family_union(fam.family), cell->underlying));
        CHECK(family_monotone(fam.family));
        for (const Rational& t : {rat(1, 7), rat(1, 2), rat(3)}) {
            const SemilinearSet ct = slice(fam.family, t);
            CHECK(is_definably_compact(ct));
            CHECK(is_subset(ct, cell->underlying));
        }
        // Sampled monotonicity, independent of the symbolic check.
        CHECK(is_subset(slice(fam.family, rat(1, 2)), slice(fam.family, rat(1, 3))));
        CHECK(is_subset(slice(fam.family, rat(5)), slice(fam.family, rat(1, 2))));
    }
}

TEST_CASE("cube face cover: frozen interval covers") {
    const CellPtr unit = interval_cell(rat(0), rat(1));
    const IndexedCover cov = cube_face_cover(unit, rat(1, 4));
    REQUIRE(cov.members.size() == 2);
    CHECK(cov.members[0].first == FaceIndex{0, false});
    CHECK(cov.members[1].first == FaceIndex{0, true});
    CHECK(sets_equal(cov.members[0].second, open_seg(rat(0), rat(1, 4))));
    CHECK(sets_equal(cov.members[1].second, open_seg(rat(3, 4), rat(1))));
    CHECK(is_empty(set_intersection(cov.members[0].second, cov.members[1].second)));
    CHECK(sets_equal(cov.space, set_union(cov.members[0].second, cov.members[1].second)));

    // Capped shrink: gamma stops at the midpoint.
    const IndexedCover deep = cube_face_cover(unit, rat(3));
    CHECK(sets_equal(deep.members[0].second, open_seg(rat(0), rat(1, 2))));
    CHECK(sets_equal(deep.members[1].second, open_seg(rat(1, 2), rat(1))));

    // Closed low end: its face is an empty member, the open end still works.
    const IndexedCover half = cube_face_cover(interval_cell(rat(0), rat(1), false, true), rat(1, 4));
    CHECK(is_empty(half.members[0].second));
    CHECK(sets_equal(half.members[1].second, open_seg(rat(3, 4), rat(1))));
    CHECK(sets_equal(half.space, half.members[1].second));

    CHECK_THROWS_AS((void)cube_face_cover(interval_cell(rat(0), rat(1), false, false), rat(1, 2)),
                    DegenerateSlice);
    CHECK_THROWS_AS((void)cube_face_cover(make_point_cell(rat(0)), rat(1)), DegenerateSlice);
    CHECK_THROWS_AS((void)cube_face_cover(unit, rat(0)), NonPositiveParameter);
    CHECK_THROWS_AS((void)cube_face_cover(unit, rat(-2)), NonPositiveParameter);
    CHECK_THROWS_AS((void)cube_face_cover(make_interval_cell(std::nullopt, rat(1)), rat(1)),
                    UnboundedCell);
}

TEST_CASE("cube face cover: square band frozen members and nerve") {
    const CellPtr band = unit_band();
    const IndexedCover cov = cube_face_cover(band, rat(1, 8));
    REQUIRE(cov.members.size() == 4);
    CHECK(cov.members[0].first == FaceIndex{0, false});
    CHECK(cov.members[1].first == FaceIndex{0, true});
    CHECK(cov.members[2].first == FaceIndex{1, false});
    CHECK(cov.members[3].first == FaceIndex{1, true});
    CHECK(sets_equal(cov.members[0].second, box2(rat(0), rat(1, 8), rat(0), rat(1))));
    CHECK(sets_equal(cov.members[1].second, box2(rat(7, 8), rat(1), rat(0), rat(1))));
    CHECK(sets_equal(cov.members[2].second, box2(rat(0), rat(1), rat(0), rat(1, 8))));
    CHECK(sets_equal(cov.members[3].second, box2(rat(0), rat(1), rat(7, 8), rat(1))));
    CHECK(sets_equal(cov.space,
                     set_difference(band->underlying, box2(rat(1, 8), rat(7, 8), rat(1, 8),
                                                           rat(7, 8), true))));

    // Four sets meeting like the edges of a square.
    const SimplicialComplex n = nerve(cov);
    REQUIRE(n.dim() == 1);
    CHECK(n.faces[0].size() == 4);
    const std::vector<std::vector<int>> edges = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(n.faces[1] == edges);
    const auto circle = simplicial_cohomology(n, CoefficientGroup::integers());
    CHECK(group_at(circle, 0) == grp(1));
    CHECK(group_at(circle, 1) == grp(1));

    // The pattern survives a capped t and a slanted wall.
    CHECK(nerve(cube_face_cover(band, rat(5))).faces == cube_face_oracle(2).faces);
    CHECK(nerve(cube_face_cover(slant_band(), rat(1, 4))).faces == cube_face_oracle(2).faces);

    // Band over a point: only the two wall strips.
    const CellPtr needle = const_band(make_point_cell(rat(1, 2)), rat(0), rat(1));
    const IndexedCover thin = cube_face_cover(needle, rat(1, 8));
    REQUIRE(thin.members.size() == 2);
    ConstraintSystem bottom(2);
    bottom.eq(lin(2, {{0, 1}}, rat(-1, 2)));
    bottom.gt(AffineForm::variable(2, 1));
    bottom.lt(lin(2, {{1, 1}}, rat(-1, 8)));
    CHECK(sets_equal(thin.members[0].second, SemilinearSet::from_system(bottom)));
    CHECK(nerve(thin).faces[0].size() == 2);
    CHECK(nerve(thin).dim() == 0);

    // Graph cover lifts the base cover.
    const CellPtr gr =
        make_graph_cell(interval_cell(rat(0), rat(1)), PLFunction::affine(lin(1, {{0, rat(1, 2)}})));
    const IndexedCover lift = cube_face_cover(gr, rat(1, 8));
    REQUIRE(lift.members.size() == 2);
    ConstraintSystem left(2);
    left.gt(AffineForm::variable(2, 0));
    left.lt(lin(2, {{0, 1}}, rat(-1, 8)));
    left.eq(lin(2, {{0, rat(-1, 2)}, {1, 1}}));
    CHECK(sets_equal(lift.members[0].second, SemilinearSet::from_system(left)));
    CHECK(sets_equal(lift.space, set_union(lift.members[0].second, lift.members[1].second)));
}

TEST_CASE("cube face cover: cube and tesseract nerves match the cube-face complex") {
    const SimplicialComplex n3 = nerve(cube_face_cover(cube_cell(), rat(1, 8)));
    REQUIRE(n3.dim() == 2);
    CHECK(n3.faces[0].size() == 6);
    CHECK(n3.faces[1].size() == 12);
    CHECK(n3.faces[2].size() == 8);
    CHECK(n3.euler_characteristic() == 2);
    CHECK(n3.faces == cube_face_oracle(3).faces);

    const auto sphere2 = simplicial_cohomology(n3, CoefficientGroup::integers());
    CHECK(group_at(sphere2, 0) == grp(1));
    CHECK(group_at(sphere2, 1) == grp(0));
    CHECK(group_at(sphere2, 2) == grp(1));

    const SimplicialComplex n4 = nerve(cube_face_cover(tesseract_cell(), rat(1, 10)));
    CHECK(n4.faces == cube_face_oracle(4).faces);
    CHECK(n4.euler_characteristic() == 0);
}

TEST_CASE("cube face cover: members are open, union is the complement of the slice") {
    std::vector<CellPtr> fixtures = {
        interval_cell(rat(0), rat(1)),
        interval_cell(rat(0), rat(1), false, true),
        unit_band(),
        slant_band(),
        cube_cell(),
        make_graph_cell(unit_band(), PLFunction::affine(lin(2, {{0, 1}, {1, -1}}, 2))),
        const_band(make_point_cell(rat(1, 2)), rat(0), rat(1)),
    };
    testing::Rng rng(977);
    for (int i = 0; i < 3; ++i) fixtures.push_back(random_tower(rng, rng.integer(2, 3)));

    for (const CellPtr& cell : fixtures) {
        CAPTURE(cell->ambient_dim);
        for (const Rational& t : {rat(1, 8), rat(6)}) {
            const IndexedCover cov = cube_face_cover(cell, t);
            CHECK(cov.members.size() == 2 * static_cast<size_t>(cell->dim));
            const SemilinearSet ct = slice(shrink_family(cell).family, t);
            CHECK(sets_equal(cov.space, set_difference(cell->underlying, ct)));
            SemilinearSet uni = SemilinearSet::empty_set(cell->ambient_dim);
            for (const auto& [face, member] : cov.members) {
                CHECK(is_subset(member, cov.space));
                CHECK(open_in(cell->underlying, member));
                uni = set_union(uni, member);
            }
            CHECK(sets_equal(uni, cov.space));
        }
    }
}

TEST_CASE("certify cube cover: every nonempty intersection is a cell") {
    std::vector<std::pair<CellPtr, Rational>> jobs = {
        {interval_cell(rat(0), rat(1)), rat(1, 4)},
        {interval_cell(rat(0), rat(1), false, true), rat(1, 4)},
        {unit_band(), rat(1, 8)},
        {unit_band(), rat(5)},
        {slant_band(), rat(1, 4)},
        {cube_cell(), rat(1, 8)},
        {make_graph_cell(interval_cell(rat(0), rat(1)), PLFunction::affine(lin(1, {{0, 1}}, -3))),
         rat(1, 8)},
        {const_band(make_point_cell(rat(1, 2)), rat(0), rat(1)), rat(1, 4)},
    };
    for (const auto& [cell, t] : jobs) {
        CAPTURE(cell->ambient_dim);
        const IndexedCover cov = cube_face_cover(cell, t);
        const CoverCertificate certs = certify_cube_cover(cell, t, cov);
        const auto subsets = nonempty_subsets(cov);
        REQUIRE(certs.intersections.size() == subsets.size());
        for (const auto& f : subsets) {
            auto it = certs.intersections.find(f);
            REQUIRE(it != certs.intersections.end());
            CHECK(sets_equal(it->second->underlying, fold_intersection(cov, f)));
        }
    }

    // Spot geometry: the band corner intersections are little boxes.
    const IndexedCover sq = cube_face_cover(unit_band(), rat(1, 8));
    const CoverCertificate certs = certify_cube_cover(unit_band(), rat(1, 8), sq);
    const CellPtr corner = certs.intersections.at({0, 2});
    CHECK(corner->dim == 2);
    CHECK(sets_equal(corner->underlying, box2(rat(0), rat(1, 8), rat(0), rat(1, 8))));
}

TEST_CASE("nerve: hand-built covers") {
    const SemilinearSet u = open_seg(rat(0), rat(1));
    IndexedCover single;
    single.space = u;
    single.members = {{FaceIndex{0, false}, u}};
    const SimplicialComplex n1 = nerve(single);
    CHECK(n1.dim() == 0);
    CHECK(n1.faces[0] == std::vector<std::vector<int>>{{0}});

    IndexedCover with_empty = single;
    with_empty.members.push_back({FaceIndex{0, true}, SemilinearSet::empty_set(1)});
    const SimplicialComplex n2 = nerve(with_empty);
    CHECK(n2.faces[0] == std::vector<std::vector<int>>{{0}});

    IndexedCover none;
    none.space = SemilinearSet::empty_set(1);
    none.members = {{FaceIndex{0, false}, SemilinearSet::empty_set(1)}};
    CHECK(nerve(none).faces.empty());
}

TEST_CASE("check iso pair: nested shrink covers pass, violations are reported") {
    for (const CellPtr& cell : {interval_cell(rat(0), rat(1)), unit_band(), slant_band()}) {
        const IndexedCover inner = cube_face_cover(cell, rat(1, 16));
        const IndexedCover outer = cube_face_cover(cell, rat(1, 8));
        const CoverIsoReport nested = check_iso_pair(inner, outer);
        CAPTURE(nested.detail);
        CHECK(nested.ok);
        CHECK(check_iso_pair(outer, outer).ok);
    }

    // Condition 1: a member of v smaller than its mate in u.
    const IndexedCover base = cube_face_cover(unit_band(), rat(1, 8));
    IndexedCover shrunk = base;
    shrunk.members[0].second = box2(rat(0), rat(1, 16), rat(0), rat(1));
    const CoverIsoReport r1 = check_iso_pair(base, shrunk);
    CHECK_FALSE(r1.ok);
    CHECK(r1.witness == std::vector<int>{0});

    // Condition 2: emptying a member of u changes the nonemptiness pattern.
    IndexedCover gutted = base;
    gutted.members[3].second = SemilinearSet::empty_set(2);
    const CoverIsoReport r2 = check_iso_pair(gutted, base);
    CHECK_FALSE(r2.ok);
    CHECK(r2.witness == std::vector<int>{3});

    // Condition 3: a disconnected member.
    IndexedCover split;
    split.space = set_union(open_seg(rat(0), rat(1)), open_seg(rat(2), rat(3)));
    split.members = {{FaceIndex{0, false}, split.space}};
    const CoverIsoReport r3 = check_iso_pair(split, split);
    CHECK_FALSE(r3.ok);
    CHECK(r3.witness == std::vector<int>{0});

    // Condition 3 again: connected but not acyclic (a square ring).
    IndexedCover ring;
    ring.space = set_difference(box2(rat(0), rat(3), rat(0), rat(3)),
                                box2(rat(1), rat(2), rat(1), rat(2), true));
    ring.members = {{FaceIndex{0, false}, ring.space}};
    const CoverIsoReport r4 = check_iso_pair(ring, ring);
    CHECK_FALSE(r4.ok);
    CHECK(r4.witness == std::vector<int>{0});
}

TEST_CASE("cech cohomology: frozen covers") {
    const CoefficientGroup z = CoefficientGroup::integers();

    IndexedCover pair;
    pair.space = open_seg(rat(0), rat(1));
    pair.members = {{FaceIndex{0, false}, open_seg(rat(0), rat(2, 3))},
                    {FaceIndex{0, true}, open_seg(rat(1, 3), rat(1))}};
    const auto segment = cech_cover_cohomology(pair, z);
    CHECK(group_at(segment, 0) == grp(1));
    CHECK(group_at(segment, 1) == grp(0));

    IndexedCover disjoint;
    disjoint.space = set_union(open_seg(rat(0), rat(1, 4)), open_seg(rat(3, 4), rat(1)));
    disjoint.members = {{FaceIndex{0, false}, open_seg(rat(0), rat(1, 4))},
                        {FaceIndex{0, true}, open_seg(rat(3, 4), rat(1))}};
    CHECK(group_at(cech_cover_cohomology(disjoint, z), 0) == grp(2));

    // Two arcs of a square ring: the overlap has two components, and the
    // Cech complex sees the circle even though the nerve is a segment.
    const SemilinearSet ring = set_difference(box2(rat(0), rat(3), rat(0), rat(3)),
                                              box2(rat(1), rat(2), rat(1), rat(2), true));
    ConstraintSystem lhs(2);
    lhs.lt(lin(2, {{0, 1}}, -2));
    ConstraintSystem rhs(2);
    rhs.gt(lin(2, {{0, 1}}, -1));
    IndexedCover arcs;
    arcs.space = ring;
    arcs.members = {{FaceIndex{0, false}, set_intersection(ring, SemilinearSet::from_system(lhs))},
                    {FaceIndex{0, true}, set_intersection(ring, SemilinearSet::from_system(rhs))}};
    const auto circle = cech_cover_cohomology(arcs, z);
    CHECK(group_at(circle, 0) == grp(1));
    CHECK(group_at(circle, 1) == grp(1));
    const auto oracle = set_cohomology(ring, z);
    for (size_t p = 0; p < 3; ++p) CHECK(group_at(circle, p) == group_at(oracle, p));

    // Cube-face cover of the square band with two coefficient groups.
    const IndexedCover sq = cube_face_cover(unit_band(), rat(1, 8));
    const auto with_z = cech_cover_cohomology(sq, z);
    CHECK(group_at(with_z, 0) == grp(1));
    CHECK(group_at(with_z, 1) == grp(1));
    const auto with_z2 = cech_cover_cohomology(sq, CoefficientGroup::cyclic(2));
    CHECK(group_at(with_z2, 0) == grp(0, {2}));
    CHECK(group_at(with_z2, 1) == grp(0, {2}));

    // Equals nerve cohomology whenever every intersection is connected.
    for (const CellPtr& cell : {interval_cell(rat(0), rat(1)), unit_band(), cube_cell()}) {
        const IndexedCover cov = cube_face_cover(cell, rat(1, 8));
        CHECK(cech_cover_cohomology(cov, z) == simplicial_cohomology(nerve(cov), z));
    }

    IndexedCover unbounded;
    unbounded.space = SemilinearSet::whole_space(1);
    ConstraintSystem ray(1);
    ray.gt(AffineForm::variable(1, 0));
    unbounded.members = {{FaceIndex{0, false}, SemilinearSet::from_system(ray)}};
    CHECK_THROWS_AS((void)cech_cover_cohomology(unbounded, z), UnboundedIntersection);
}

TEST_CASE("good cover cohomology: sphere patterns from certified cube covers") {
    const CoefficientGroup z = CoefficientGroup::integers();

    const std::vector<CellPtr> cells = {interval_cell(rat(0), rat(1)), unit_band(), cube_cell()};
    const std::vector<std::vector<AbelianGroup>> spheres = {
        {grp(2)}, {grp(1), grp(1)}, {grp(1), grp(0), grp(1)}};
    for (size_t m = 0; m < cells.size(); ++m) {
        const IndexedCover cov = cube_face_cover(cells[m], rat(1, 8));
        const CoverCertificate certs = certify_cube_cover(cells[m], rat(1, 8), cov);
        const auto groups = good_cover_cohomology(cov, certs, z);
        CAPTURE(m);
        for (size_t p = 0; p <= m + 1; ++p) CHECK(group_at(groups, p) == group_at(spheres[m], p));
        // Matches both the Cech complex and the direct oracle on the space.
        CHECK(groups == cech_cover_cohomology(cov, z));
        const auto direct = set_cohomology(cov.space, z);
        for (size_t p = 0; p <= m + 1; ++p) CHECK(group_at(groups, p) == group_at(direct, p));
    }

    // Singleton cover of a cell computes a point.
    const CellPtr band = unit_band();
    IndexedCover single;
    single.space = band->underlying;
    single.members = {{FaceIndex{0, false}, band->underlying}};
    CoverCertificate certs;
    certs.intersections[{0}] = band;
    const auto pt = good_cover_cohomology(single, certs, z);
    CHECK(group_at(pt, 0) == grp(1));
    CHECK(group_at(pt, 1) == grp(0));

    // Cover with an empty member: the nerve is a single vertex.
    const CellPtr half = interval_cell(rat(0), rat(1), false, true);
    const IndexedCover hc = cube_face_cover(half, rat(1, 4));
    const auto hgroups = good_cover_cohomology(hc, certify_cube_cover(half, rat(1, 4), hc), z);
    CHECK(group_at(hgroups, 0) == grp(1));

    CHECK_THROWS_AS((void)good_cover_cohomology(single, CoverCertificate{}, z), MissingCertificate);
    CoverCertificate wrong;
    wrong.intersections[{0}] = interval_cell(rat(0), rat(1));
    CHECK_THROWS_AS((void)good_cover_cohomology(single, wrong, z), MissingCertificate);
}
