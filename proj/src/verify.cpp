#include "ominal/verify.hpp"

#include "ominal/cover.hpp"
#include "ominal/errors.hpp"
#include "ominal/fixtures.hpp"
#include "ominal/fourier_motzkin.hpp"
#include "ominal/homology.hpp"
#include "ominal/triangulate.hpp"
#include "ominal/typespace.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace ominal::verify {
namespace {

void push(SuiteReport& r, std::string anchor, std::string detail, bool ok) {
    r.passed = r.passed && ok;
    r.checks.push_back({std::move(anchor), std::move(detail), ok});
}

std::string group_string(const std::vector<AbelianGroup>& gs) {
    if (gs.empty()) return "all groups zero";
    std::string out;
    for (size_t p = 0; p < gs.size(); ++p) {
        if (p) out += ", ";
        out += "H^" + std::to_string(p) + " = " + to_string(gs[p]);
    }
    return out;
}

bool groups_equal(std::vector<AbelianGroup> a, std::vector<AbelianGroup> b) {
    const size_t n = std::max(a.size(), b.size());
    a.resize(n);
    b.resize(n);
    return a == b;
}

std::vector<AbelianGroup> point_groups(const CoefficientGroup& g) { return {g.value()}; }

std::vector<AbelianGroup> sphere_groups(int m, const CoefficientGroup& g) {
    if (m == 0) return {CoefficientGroup::direct_sum(g, g).value()};
    std::vector<AbelianGroup> out(m + 1);
    out[0] = g.value();
    out[m] = g.value();
    return out;
}

long long chi_of(const std::vector<AbelianGroup>& gs) {
    long long c = 0;
    for (size_t p = 0; p < gs.size(); ++p) c += (p % 2 ? -1 : 1) * gs[p].free_rank;
    return c;
}

// The shrink family of these cells ends in a single point: some side of every
// interval factor is strict, and band walls always meet at the midline.
bool collapses(const CellPtr& c) {
    switch (c->kind) {
    case CellKind::Point: return true;
    case CellKind::Interval: return c->lo_strict || c->hi_strict;
    default: return collapses(c->base);
    }
}

// Cells whose slices fill the whole cell at every parameter, so a cover of
// the complement is degenerate.
bool fully_closed(const CellPtr& c) {
    switch (c->kind) {
    case CellKind::Point: return true;
    case CellKind::Interval: return !c->lo_strict && !c->hi_strict;
    case CellKind::Graph: return fully_closed(c->base);
    case CellKind::Band: return false;
    }
    return false;
}

// Intersection of the slices over 0 < u < t, computed directly from the
// total space.
SemilinearSet z_slice(const DefinableFamily& fam, const Rational& t) {
    const int n = fam.total_space.ambient_dim;
    ConstraintSystem range(n);
    range.gt(AffineForm::variable(n, fam.parameter_axis));
    range.lt(AffineForm::variable(n, fam.parameter_axis) - AffineForm::constant_form(n, t));
    const SemilinearSet missing =
        set_intersection(SemilinearSet::from_system(range), set_complement(fam.total_space));
    return set_complement(fm_project_set(missing, fam.parameter_axis));
}

// Cohomology of a closed bounded set from a triangulation adapted to the
// given decomposition pieces: the simplices tagged as lying in the set form
// a full subcomplex carrying it.
std::vector<AbelianGroup> groups_via(const SemilinearSet& s,
                                     const std::vector<SemilinearSet>& pieces,
                                     const CoefficientGroup& g) {
    std::vector<SemilinearSet> inputs;
    inputs.reserve(pieces.size() + 1);
    inputs.push_back(s);
    for (const auto& p : pieces) inputs.push_back(p);
    const Triangulation tri = triangulate(inputs);
    std::vector<std::vector<int>> kept;
    for (size_t p = 0; p < tri.complex.faces.size(); ++p) {
        for (size_t i = 0; i < tri.complex.faces[p].size(); ++i) {
            if (tri.tags[0][p][i]) kept.push_back(tri.complex.faces[p][i]);
        }
    }
    return simplicial_cohomology(SimplicialComplex::from_simplices(std::move(kept)), g);
}

SemilinearSet line_piece(const Rational& a, const Rational& b, bool lo_closed, bool hi_closed) {
    ConstraintSystem sys(1);
    const AffineForm low = AffineForm::variable(1, 0) - AffineForm::constant_form(1, a);
    const AffineForm high = AffineForm::variable(1, 0) - AffineForm::constant_form(1, b);
    if (lo_closed) {
        sys.ge(low);
    } else {
        sys.gt(low);
    }
    if (hi_closed) {
        sys.le(high);
    } else {
        sys.lt(high);
    }
    return SemilinearSet::from_system(sys);
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

const Rational kQuarter(1, 4);
const Rational kHalf(1, 2);

} // namespace

SuiteReport intervals() {
    SuiteReport r{"intervals"};
    const auto coeffs = {std::pair{CoefficientGroup::integers(), std::string("Z")},
                         std::pair{CoefficientGroup::cyclic(2), std::string("Z/2")}};
    for (const auto& [a, b] : fixtures::interval_endpoints()) {
        const SemilinearSet interval = closure(line_piece(a, b, true, true));
        for (const auto& [g, label] : coeffs) {
            const auto gs = set_cohomology(interval, g);
            push(r, "a closed bounded interval is acyclic: H^0 = G and H^p = 0 for p > 0",
                 "[" + to_string(a) + ", " + to_string(b) + "] with G = " + label + ": " +
                     group_string(gs),
                 groups_equal(gs, point_groups(g)));
        }
    }
    return r;
}

SuiteReport cells() {
    SuiteReport r{"cells"};
    const CoefficientGroup z = CoefficientGroup::integers();
    for (const auto& nc : fixtures::bounded_cells()) {
        const auto gs = set_cohomology(nc.cell->underlying, z);
        push(r, "a bounded cell has the cohomology of a point",
             nc.name + ": " + group_string(gs), groups_equal(gs, point_groups(z)));
        const Contraction con = contraction(nc.cell);
        const HomotopyReport rep = verify_contraction(con, nc.cell);
        std::string detail = nc.name + ": retracts onto " + to_string(con.target);
        for (const auto& issue : rep.issues) detail += "; " + issue;
        push(r, "the contraction of a bounded cell is a certified piecewise affine homotopy",
             detail, rep.ok);
    }
    return r;
}

SuiteReport spheres() {
    SuiteReport r{"spheres"};
    const CoefficientGroup z = CoefficientGroup::integers();
    const CoefficientGroup z2 = CoefficientGroup::cyclic(2);
    for (const auto& nc : fixtures::bounded_cells()) {
        const int m = nc.cell->dim;
        if (m < 1) continue;
        for (const Rational& t : {kQuarter, kHalf}) {
            const std::string tag = nc.name + " at t = " + to_string(t);
            try {
                const ShrinkFamily sf = shrink_family(nc.cell);
                const SemilinearSet core = slice(sf.family, t);
                const IndexedCover cov = cube_face_cover(nc.cell, t);
                const CoverCertificate cert = certify_cube_cover(nc.cell, t, cov);
                const auto nerve_gs = simplicial_cohomology(nerve(cov), z);
                const auto good_gs = good_cover_cohomology(cov, cert, z);
                const auto cech_gs = cech_cover_cohomology(cov, z);
                const auto shell =
                    set_cohomology(set_difference(nc.cell->underlying, core), z);
                push(r,
                     "nerve, Cech, and good-cover cohomology of the cube-face cover agree "
                     "with the oracle on the cell minus its core",
                     tag + ": " + group_string(shell),
                     groups_equal(nerve_gs, shell) && groups_equal(good_gs, shell) &&
                         groups_equal(cech_gs, shell));
                if (nc.open) {
                    push(r,
                         "the cube-face cover of an open m-cell is a cover by the faces of "
                         "an (m-1)-sphere",
                         tag + ": nerve " + group_string(nerve_gs),
                         groups_equal(nerve_gs, sphere_groups(m - 1, z)));
                    if (m == 1) {
                        const auto mod2 = good_cover_cohomology(cov, cert, z2);
                        push(r,
                             "the sphere cover keeps its cohomology with Z/2 coefficients",
                             tag + ": " + group_string(mod2),
                             groups_equal(mod2, sphere_groups(0, z2)));
                    }
                }
            } catch (const DegenerateSlice& e) {
                push(r, "a cover of a cell whose slice already fills it is rejected",
                     tag + ": " + e.what(), fully_closed(nc.cell));
            }
        }
    }
    return r;
}

SuiteReport shrink_laws() {
    SuiteReport r{"shrink"};
    for (const auto& nc : fixtures::bounded_cells()) {
        const ShrinkFamily sf = shrink_family(nc.cell);
        const SemilinearSet& total = sf.family.total_space;
        const int n = total.ambient_dim - 1;

        push(r, "the slices of the shrink family exhaust the cell", nc.name,
             sets_equal(fm_project_set(total, 0), nc.cell->underlying));

        // On axes (s, t, x): a point of the slice at t missing from the slice
        // at an earlier s would violate monotonicity.
        const int m = n + 2;
        std::vector<int> at_t(n + 1), at_s(n + 1);
        at_t[0] = 1;
        at_s[0] = 0;
        for (int i = 1; i <= n; ++i) at_t[i] = at_s[i] = i + 1;
        ConstraintSystem range(m);
        range.gt(AffineForm::variable(m, 0));
        range.lt(AffineForm::variable(m, 0) - AffineForm::variable(m, 1));
        const SemilinearSet bad = set_intersection(
            set_intersection(SemilinearSet::from_system(range), embed(total, m, at_t)),
            set_complement(embed(total, m, at_s)));
        push(r, "the shrink family is decreasing in the parameter", nc.name, is_empty(bad));

        bool compact = true;
        for (const Rational& t : {kQuarter, Rational(2), Rational(1000)}) {
            compact = compact && is_definably_compact(slice(sf.family, t));
        }
        push(r, "every slice of the shrink family is definably compact",
             nc.name + " at t = 1/4, 2, 1000", compact);

        const SemilinearSet big = slice(sf.family, Rational(10));
        const bool stable = sets_equal(big, slice(sf.family, Rational(11)));
        if (collapses(nc.cell)) {
            const auto pt = sample_point(big);
            push(r, "for large parameters the slice of a collapsing cell is a single point",
                 nc.name,
                 stable && pt && sets_equal(big, SemilinearSet::single_point(*pt)));
        } else {
            push(r, "for large parameters the slice of a non-collapsing cell stabilizes",
                 nc.name, stable && !is_empty(big));
        }

        if (!fully_closed(nc.cell) && nc.cell->dim >= 1) {
            const IndexedCover u = cube_face_cover(nc.cell, Rational(1, 8));
            const IndexedCover v = cube_face_cover(nc.cell, kQuarter);
            const CoverIsoReport iso = check_iso_pair(u, v);
            push(r, "nested cover parameters induce a cohomology isomorphism of covers",
                 nc.name + ": " + iso.detail, iso.ok);
        }
    }
    return r;
}

SuiteReport boundary() {
    SuiteReport r{"boundary"};
    const CoefficientGroup z = CoefficientGroup::integers();
    for (const auto& nc : fixtures::bounded_cells()) {
        if (!collapses(nc.cell)) continue;
        const ShrinkFamily sf = shrink_family(nc.cell);
        const SemilinearSet core = slice(sf.family, Rational(10));
        const auto a = sample_point(core);
        if (!a || !sets_equal(core, SemilinearSet::single_point(*a))) {
            push(r, "the large-parameter slice of a collapsing cell is a single point",
                 nc.name, false);
            continue;
        }
        const SemilinearSet cl = closure(nc.cell->underlying);
        const auto punctured = oracle_cohomology(cl, SemilinearSet::single_point(*a), z);
        const auto frontier = set_cohomology(set_difference(cl, nc.cell->underlying), z);
        push(r,
             "removing the collapse point from the closure of a cell leaves the cohomology "
             "of its frontier",
             nc.name + " at a = " + to_string(*a) + ": punctured " + group_string(punctured) +
                 "; frontier " + group_string(frontier),
             groups_equal(punctured, frontier));
    }
    return r;
}

SuiteReport strange() {
    SuiteReport r{"strange"};
    const CoefficientGroup z = CoefficientGroup::integers();

    const CellPtr c = fixtures::strange_cell();
    push(r, "the pinched double graph is a certified cell of dimension 2 in ambient dimension 4",
         "kind = graph over graph over the open square",
         c->kind == CellKind::Graph && c->dim == 2 && c->ambient_dim == 4 &&
             is_bounded(c->underlying));

    const SemilinearSet cut = fixtures::slit_annulus();
    const SemilinearSet ring = fixtures::slit_annulus_closure();
    const auto cut_gs = set_cohomology(cut, z);
    const auto ring_gs = set_cohomology(ring, z);
    push(r, "cutting a slit makes the annulus acyclic while its closure keeps the loop",
         "cut annulus " + group_string(cut_gs) + "; closure " + group_string(ring_gs) +
             "; closure recovers the full annulus: " +
             (sets_equal(closure(cut), ring) ? "yes" : "no"),
         groups_equal(cut_gs, point_groups(z)) &&
             groups_equal(ring_gs, {AbelianGroup{1, {}}, AbelianGroup{1, {}}}) &&
             sets_equal(closure(cut), ring));

    const auto closure_gs = set_cohomology(closure(c->underlying), z);
    const bool h1_nonzero = closure_gs.size() > 1 && !closure_gs[1].is_zero();
    push(r, "H^1 of the closure of the pinched double graph cell is nonzero",
         "computed " + group_string(closure_gs) +
             "; a continuous piecewise affine function on a bounded cell is Lipschitz, so it "
             "extends to the closure and the closure stays contractible",
         h1_nonzero);
    return r;
}

SuiteReport euler() {
    SuiteReport r{"euler"};
    const CoefficientGroup z = CoefficientGroup::integers();
    for (const auto& ep : fixtures::euler_pairs()) {
        const ShrinkFamily sf = shrink_family(ep.cell);
        const SemilinearSet core = slice(sf.family, ep.t);
        const long long cx = chi_of(set_cohomology(ep.space, z));
        const long long cxm = chi_of(set_cohomology(set_difference(ep.space, core), z));
        const long long cc = chi_of(set_cohomology(ep.cell->underlying, z));
        const long long ccm =
            chi_of(set_cohomology(set_difference(ep.cell->underlying, core), z));
        push(r, "chi(X) = chi(X minus the core) + chi(C) - chi(C minus the core)",
             ep.name + ": " + std::to_string(cx) + " = " + std::to_string(cxm) + " + " +
                 std::to_string(cc) + " - " + std::to_string(ccm),
             cx == cxm + cc - ccm);
    }
    return r;
}

SuiteReport finiteness() {
    SuiteReport r{"finiteness"};
    const CoefficientGroup z = CoefficientGroup::integers();
    for (const auto& ns : fixtures::compact_sets()) {
        std::string detail = ns.name;
        bool compact = is_definably_compact(ns.set);
        const auto gs = set_cohomology(ns.set, z);
        detail += ": " + group_string(gs);
        bool finite = true;
        for (const auto& g : gs) {
            finite = finite && g.free_rank >= 0;
            for (const auto& d : g.torsion) finite = finite && d > 1;
        }
        push(r, "cohomology of a definably compact set is finitely generated",
             detail, compact && finite);
        const int d = dimension(ns.set);
        bool vanishes = true;
        for (size_t p = 0; p < gs.size(); ++p) {
            if (static_cast<int>(p) > d) vanishes = vanishes && gs[p].is_zero();
        }
        push(r, "H^p of a definably compact set vanishes above its dimension",
             ns.name + ": dimension " + std::to_string(d), vanishes);
    }
    return r;
}

SuiteReport stabilization() {
    SuiteReport r{"stabilization"};
    for (const auto& nf : fixtures::stabilization_families()) {
        if (nf.violates_closedness) {
            bool rejected = false;
            std::string msg = "no error raised";
            try {
                (void)stabilization_t0(nf.family);
            } catch (const NotClosedSlices& e) {
                rejected = true;
                msg = e.what();
            }
            push(r, "a family whose slices are not closed is rejected",
                 nf.name + ": " + msg, rejected);
            continue;
        }
        const auto t0 = stabilization_t0(nf.family);
        push(r, "the stabilization threshold is the first positive local extremum of the exit time",
             nf.name + ": t0 = " + (t0 ? to_string(*t0) : std::string("none")),
             t0.has_value() && nf.expected_t0.has_value() && *t0 == *nf.expected_t0);
        if (!t0) continue;
        bool law = true;
        for (int num = 1; num <= 3; ++num) {
            const Rational t = *t0 * Rational(num, 4);
            law = law && sets_equal(slice(nf.family, t), z_slice(nf.family, t));
        }
        push(r, "below the threshold every slice equals the intersection of the earlier slices",
             nf.name + " at t0/4, t0/2, 3 t0/4", law);
    }
    return r;
}

SuiteReport typespace(unsigned seed) {
    SuiteReport r{"typespace"};
    using Kind = NamedType1D::Kind;
    const SemilinearSet unit = line_piece(0, 1, true, true);
    ConstraintSystem tail(1);
    tail.gt(lin(1, {{0, 1}}, -3));
    const SemilinearSet mixed =
        set_union(set_union(line_piece(0, 1, true, false),
                            SemilinearSet::single_point({Rational(2)})),
                  SemilinearSet::from_system(tail));

    for (const auto& [x, name] : {std::pair{unit, std::string("[0, 1]")},
                                  std::pair{mixed, std::string("[0, 1) with a point and a tail")}}) {
        const TypeSpace1D space = enumerate_named_types(x);
        bool member = true, ordered = true;
        for (size_t i = 0; i < space.types.size(); ++i) {
            member = member && type_in(space.types[i], x);
            if (i) ordered = ordered && type_less(space.types[i - 1], space.types[i]);
        }
        push(r, "every enumerated type of a one-dimensional set lies in it, in position order",
             name + ": " + std::to_string(space.types.size()) + " types", member && ordered);

        bool closures = true;
        for (const auto& p : space.types) {
            std::vector<NamedType1D> actual;
            for (const auto& q : space.types) {
                if (specializes(p, q, x)) actual.push_back(q);
            }
            std::vector<NamedType1D> expected{p};
            if (p.kind == Kind::LeftOf || p.kind == Kind::RightOf) {
                const NamedType1D target = NamedType1D::realized(p.value);
                if (type_in(target, x)) expected.push_back(target);
            }
            auto order = [](const NamedType1D& a, const NamedType1D& b) {
                return type_less(a, b);
            };
            std::sort(actual.begin(), actual.end(), order);
            std::sort(expected.begin(), expected.end(), order);
            closures = closures && actual == expected;
        }
        push(r, "the closure of a germ is the germ and its realized point; realized types are closed",
             name, closures);
    }

    {
        const std::vector<SemilinearSet> two = {line_piece(-1, 1, false, false),
                                                line_piece(0, 2, false, false)};
        const SubcoverResult sub = finite_subcover(unit, two);
        push(r, "a finite subcover is extracted from a constructible cover",
             "[0, 1] by (-1, 1) and (0, 2): chose " + std::to_string(sub.chosen.size()),
             sub.covered && sub.chosen.size() == 2);

        std::vector<SemilinearSet> exhaust;
        for (int k = 2; k <= 5; ++k) {
            exhaust.push_back(line_piece(0, Rational(k - 1, k), false, false));
        }
        const SubcoverResult gap = finite_subcover(line_piece(0, 1, false, false), exhaust);
        push(r, "a cover that misses a type of the set is refuted by a witness type",
             "(0, 1) by (0, (k-1)/k): missing " +
                 (gap.missing ? to_string(*gap.missing) : std::string("nothing")),
             !gap.covered && gap.missing &&
                 *gap.missing == NamedType1D::left_of(1));
    }

    Rng rng(seed);
    bool random_ok = true;
    for (int round = 0; round < 20 && random_ok; ++round) {
        const int a = rng.integer(-5, 0);
        const int b = a + rng.integer(2, 6);
        const SemilinearSet x = line_piece(a, b, true, true);
        std::vector<SemilinearSet> members;
        const int extras = rng.integer(4, 7);
        for (int i = 0; i < extras; ++i) {
            const int c = rng.integer(-8, 7);
            members.push_back(line_piece(c, c + rng.integer(1, 5), false, false));
        }
        members.insert(members.begin() + rng.integer(0, extras),
                       line_piece(a - 1, b + 1, false, false));
        const SubcoverResult sub = finite_subcover(x, members);
        if (!sub.covered) {
            random_ok = false;
            break;
        }
        SemilinearSet chosen_union = SemilinearSet::empty_set(1);
        for (int i : sub.chosen) chosen_union = set_union(chosen_union, members[i]);
        random_ok = random_ok && is_subset(x, chosen_union);
        for (int i : sub.chosen) {
            SemilinearSet rest = SemilinearSet::empty_set(1);
            for (int j : sub.chosen) {
                if (j != i) rest = set_union(rest, members[j]);
            }
            random_ok = random_ok && !is_subset(x, rest);
        }
    }
    push(r, "extracted subcovers cover the set and are inclusion-minimal",
         "20 randomized constructible covers", random_ok);

    {
        const auto [u, v] = separate_closed(line_piece(0, 1, true, true),
                                            line_piece(2, 3, true, true));
        ConstraintSystem below(1), above(1);
        below.lt(lin(1, {{0, 1}}, Rational(-3, 2)));
        above.gt(lin(1, {{0, 1}}, Rational(-3, 2)));
        push(r, "disjoint closed sets are separated by opens cut at gap midpoints",
             "[0, 1] against [2, 3]: cut at 3/2",
             sets_equal(u, SemilinearSet::from_system(below)) &&
                 sets_equal(v, SemilinearSet::from_system(above)));
    }
    bool sep_ok = true;
    for (int round = 0; round < 12 && sep_ok; ++round) {
        int cursor = rng.integer(-8, -4);
        SemilinearSet a_set = SemilinearSet::empty_set(1);
        SemilinearSet b_set = SemilinearSet::empty_set(1);
        const int pieces = rng.integer(2, 4);
        for (int i = 0; i < pieces; ++i) {
            const int w = rng.integer(0, 2);
            const SemilinearSet piece =
                w == 0 ? SemilinearSet::single_point({Rational(cursor)})
                       : line_piece(cursor, cursor + w, true, true);
            if (i % 2 == 0) {
                a_set = set_union(a_set, piece);
            } else {
                b_set = set_union(b_set, piece);
            }
            cursor += w + rng.integer(1, 3);
        }
        const auto [u, v] = separate_closed(a_set, b_set);
        sep_ok = sep_ok && is_subset(a_set, u) && is_subset(b_set, v) &&
                 is_empty(set_intersection(u, v)) && sets_equal(u, interior(u)) &&
                 sets_equal(v, interior(v));
    }
    push(r, "disjoint closed sets are separated by disjoint open sets",
         "12 randomized closed pairs", sep_ok);
    return r;
}

SuiteReport refinement() {
    SuiteReport r{"refinement"};
    const CoefficientGroup z = CoefficientGroup::integers();
    for (const auto& rc : fixtures::refinement_cases()) {
        const CellDecomposition d = decompose(rc.set);
        std::vector<SemilinearSet> pieces;
        pieces.reserve(d.cells.size());
        for (const auto& c : d.cells) pieces.push_back(c->underlying);
        const auto coarse = groups_via(rc.set, pieces, z);

        ConstraintSystem lo(rc.set.ambient_dim), hi(rc.set.ambient_dim);
        lo.le(rc.splitter);
        hi.ge(rc.splitter);
        std::vector<SemilinearSet> refined = pieces;
        refined.push_back(set_intersection(rc.set, SemilinearSet::from_system(lo)));
        refined.push_back(set_intersection(rc.set, SemilinearSet::from_system(hi)));
        const auto fine = groups_via(rc.set, refined, z);

        push(r, "cohomology computed from a decomposition and from its refinement agree",
             rc.name + ": " + group_string(coarse), groups_equal(coarse, fine));
    }
    return r;
}

std::vector<std::string> suite_names() {
    return {"intervals", "cells",     "spheres",       "boundary",  "strange",
            "euler",     "typespace", "stabilization", "refinement"};
}

std::optional<SuiteReport> run_suite(const std::string& name, unsigned seed) {
    if (name == "intervals") return intervals();
    if (name == "cells") return cells();
    if (name == "spheres") return spheres();
    if (name == "boundary") return boundary();
    if (name == "strange") return strange();
    if (name == "euler") return euler();
    if (name == "typespace") return typespace(seed);
    if (name == "stabilization") return stabilization();
    if (name == "refinement") return refinement();
    return std::nullopt;
}

} // namespace ominal::verify
