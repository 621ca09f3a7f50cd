#include "ominal/fixtures.hpp"

#include "ominal/plmap.hpp"

#include <utility>

namespace ominal::fixtures {
namespace {

Rational rat(int num, int den = 1) { return Rational(num, den); }

AffineForm var(int dim, int axis) { return AffineForm::variable(dim, axis); }

CellPtr seg(const Rational& a, const Rational& b, bool lo_strict = true,
            bool hi_strict = true) {
    return make_interval_cell(a, b, lo_strict, hi_strict);
}

PLFunction level(int dim, const Rational& v) { return PLFunction::constant(dim, v); }

CellPtr const_band(CellPtr base, const Rational& lo, const Rational& hi) {
    const int d = base->ambient_dim;
    return make_band_cell(std::move(base), level(d, lo), level(d, hi));
}

PLFunction clamp(const PLFunction& e, const PLFunction& lo, const PLFunction& hi) {
    return pl_min(pl_max(e, lo), hi);
}

// Same function with one trailing axis appended that the value ignores.
PLFunction lift(const PLFunction& f) {
    PLFunction out(f.dim + 1);
    for (const auto& piece : f.pieces) {
        out.pieces.push_back({piece.domain.insert_axis(f.dim), piece.value.insert_axis(f.dim)});
    }
    return out;
}

SemilinearSet closed_box(const std::vector<std::pair<Rational, Rational>>& sides) {
    const int n = static_cast<int>(sides.size());
    ConstraintSystem sys(n);
    for (int i = 0; i < n; ++i) {
        sys.ge(var(n, i) - AffineForm::constant_form(n, sides[i].first));
        sys.le(var(n, i) - AffineForm::constant_form(n, sides[i].second));
    }
    return SemilinearSet::from_system(sys);
}

SemilinearSet open_box(const std::vector<std::pair<Rational, Rational>>& sides) {
    const int n = static_cast<int>(sides.size());
    ConstraintSystem sys(n);
    for (int i = 0; i < n; ++i) {
        sys.gt(var(n, i) - AffineForm::constant_form(n, sides[i].first));
        sys.lt(var(n, i) - AffineForm::constant_form(n, sides[i].second));
    }
    return SemilinearSet::from_system(sys);
}

// --- cells shared between the corpus and the Euler pairs ---

CellPtr open_interval() { return seg(rat(0), rat(1)); }

CellPtr diagonal_graph() {
    return make_graph_cell(open_interval(), PLFunction::affine(var(1, 0)));
}

CellPtr vee_graph() {
    return make_graph_cell(seg(rat(0), rat(2)),
                           pl_max(PLFunction::affine(lin(1, {{0, 1}}, -1)),
                                  PLFunction::affine(lin(1, {{0, -1}}, 1))));
}

CellPtr open_square() { return const_band(open_interval(), rat(0), rat(1)); }

CellPtr slant_band() {
    return make_band_cell(open_interval(), level(1, rat(0)),
                          PLFunction::affine(lin(1, {{0, 1}}, 1)));
}

CellPtr wedge_band() {
    return make_band_cell(seg(rat(0), rat(2)), level(1, rat(0)),
                          pl_min(PLFunction::affine(lin(1, {{0, 1}}, 1)),
                                 PLFunction::affine(lin(1, {{0, -1}}, 3))));
}

CellPtr band_over_graph() { return const_band(diagonal_graph(), rat(0), rat(1)); }

CellPtr square_in_space() {
    return make_graph_cell(open_square(), PLFunction::affine(lin(2, {{0, 1}, {1, -1}})));
}

CellPtr square_in_four() {
    return make_graph_cell(square_in_space(), PLFunction::affine(lin(3, {{0, 1}, {2, 1}})));
}

CellPtr open_cube() { return const_band(open_square(), rat(0), rat(1)); }

CellPtr slant_prism() { return const_band(slant_band(), rat(0), rat(1)); }

CellPtr cube_in_four() {
    return make_graph_cell(open_cube(), PLFunction::affine(lin(3, {{0, 1}, {1, 2}, {2, -1}})));
}

SemilinearSet triangle() {
    ConstraintSystem sys(2);
    sys.ge(var(2, 0));
    sys.ge(var(2, 1));
    sys.le(lin(2, {{0, 1}, {1, 1}}, -1));
    return SemilinearSet::from_system(sys);
}

SemilinearSet middle_bar() {
    ConstraintSystem sys(2);
    sys.eq(var(2, 1));
    sys.ge(lin(2, {{0, 1}}, 1));
    sys.le(lin(2, {{0, 1}}, -1));
    return SemilinearSet::from_system(sys);
}

} // namespace

std::vector<std::pair<Rational, Rational>> interval_endpoints() {
    return {{rat(0), rat(1)},       {rat(-1), rat(2)},      {rat(1, 2), rat(7, 3)},
            {rat(-5, 2), rat(-1, 3)}, {rat(0), rat(1, 7)},  {rat(-2), rat(0)},
            {rat(3), rat(4)},       {rat(-7, 3), rat(8, 5)}, {rat(1, 4), rat(1, 3)},
            {rat(-1), rat(1)}};
}

std::vector<NamedCell> bounded_cells() {
    std::vector<NamedCell> out;
    out.push_back({"point at origin", make_point_cell(rat(0)), false});
    out.push_back({"point at one half", make_point_cell(rat(1, 2)), false});
    out.push_back({"open interval", open_interval(), true});
    out.push_back({"half-open interval", seg(rat(0), rat(1), false, true), false});
    out.push_back({"closed interval", seg(rat(-1), rat(2), false, false), false});
    out.push_back({"skew open interval", seg(rat(-3, 2), rat(1, 3)), true});
    out.push_back({"diagonal graph", diagonal_graph(), true});
    out.push_back({"vee graph", vee_graph(), true});
    out.push_back({"stacked graph",
                   make_graph_cell(diagonal_graph(), PLFunction::affine(lin(2, {{0, 1}, {1, 1}}))),
                   true});
    out.push_back({"absolute value graph",
                   make_graph_cell(open_interval(),
                                   pl_max(PLFunction::affine(lin(1, {{0, 1}}, rat(-1, 4))),
                                          PLFunction::affine(lin(1, {{0, -1}}, rat(3, 4))))),
                   true});
    out.push_back({"open square", open_square(), true});
    out.push_back({"half-open column", const_band(seg(rat(0), rat(1), false, false), rat(0), rat(1)),
                   false});
    out.push_back({"slant band", slant_band(), true});
    out.push_back({"wedge band", wedge_band(), true});
    out.push_back({"band over a graph", band_over_graph(), true});
    out.push_back({"square in space", square_in_space(), true});
    out.push_back({"square in four dimensions", square_in_four(), true});
    out.push_back({"open cube", open_cube(), true});
    out.push_back({"slant prism", slant_prism(), true});
    out.push_back({"cube in four dimensions", cube_in_four(), true});
    return out;
}

std::vector<NamedSet> compact_sets() {
    std::vector<NamedSet> out;
    out.push_back({"single point", SemilinearSet::single_point({rat(3, 4)})});
    out.push_back({"point pair", set_union(SemilinearSet::single_point({rat(0)}),
                                           SemilinearSet::single_point({rat(5, 2)}))});
    out.push_back({"closed segment", closed_box({{rat(0), rat(1)}})});
    out.push_back({"bent segment", closure(vee_graph()->underlying)});
    out.push_back({"closed square", closed_box({{rat(0), rat(1)}, {rat(0), rat(1)}})});
    out.push_back({"triangle", triangle()});
    out.push_back({"square annulus", slit_annulus_closure()});
    out.push_back({"theta frame", set_union(slit_annulus_closure(), middle_bar())});
    out.push_back({"closed slant band", closure(slant_band()->underlying)});
    out.push_back({"solid cube", closed_box({{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}})});
    out.push_back({"cube shell",
                   set_difference(closed_box({{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}}),
                                  open_box({{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}}))});
    out.push_back({"segment with far point",
                   set_union(closed_box({{rat(0), rat(1)}}), SemilinearSet::single_point({rat(2)}))});
    return out;
}

std::vector<EulerPair> euler_pairs() {
    std::vector<EulerPair> out;
    out.push_back({"interval in itself", closed_box({{rat(0), rat(1)}}), open_interval(), rat(1, 4)});
    out.push_back({"interval in a longer one", closed_box({{rat(-1), rat(2)}}), open_interval(),
                   rat(1, 4)});
    out.push_back({"square in its closure", closure(open_square()->underlying), open_square(),
                   rat(1, 8)});
    out.push_back({"slant band in its closure", closure(slant_band()->underlying), slant_band(),
                   rat(1, 8)});
    out.push_back({"wedge in its closure", closure(wedge_band()->underlying), wedge_band(),
                   rat(1, 10)});
    out.push_back({"small square in a large one", closed_box({{rat(-1), rat(2)}, {rat(-1), rat(2)}}),
                   open_square(), rat(1, 4)});
    out.push_back({"cube in its closure", closure(open_cube()->underlying), open_cube(), rat(1, 4)});
    out.push_back({"vee graph in its closure", closure(vee_graph()->underlying), vee_graph(),
                   rat(1, 4)});
    out.push_back({"band over a graph in its closure", closure(band_over_graph()->underlying),
                   band_over_graph(), rat(1, 8)});
    out.push_back({"interval in a two-piece space",
                   set_union(closed_box({{rat(0), rat(1)}}), closed_box({{rat(2), rat(3)}})),
                   seg(rat(2), rat(3)), rat(1, 4)});
    out.push_back({"lifted square in its closure", closure(square_in_four()->underlying),
                   square_in_four(), rat(1, 8)});
    return out;
}

std::vector<NamedFamily> stabilization_families() {
    std::vector<NamedFamily> out;
    // Y_t = [t, 1].
    ConstraintSystem shrinking(2);
    shrinking.gt(var(2, 0));
    shrinking.ge(var(2, 1) - var(2, 0));
    shrinking.le(lin(2, {{1, 1}}, -1));
    out.push_back({"shrinking interval", {SemilinearSet::from_system(shrinking), 0}, rat(1), false});

    // Y_t = [t, 1] plus an island [2, 3] that vanishes at t = 1/2.
    ConstraintSystem island(2);
    island.gt(var(2, 0));
    island.lt(lin(2, {{0, 1}}, rat(-1, 2)));
    island.ge(lin(2, {{1, 1}}, -2));
    island.le(lin(2, {{1, 1}}, -3));
    out.push_back({"vanishing island",
                   {set_union(out[0].family.total_space, SemilinearSet::from_system(island)), 0},
                   rat(1, 2), false});

    // Y_t = [t, 2 - t], empty past t = 1.
    ConstraintSystem tent(2);
    tent.gt(var(2, 0));
    tent.ge(var(2, 1) - var(2, 0));
    tent.le(var(2, 1) + var(2, 0) - AffineForm::constant_form(2, rat(2)));
    out.push_back({"tent", {SemilinearSet::from_system(tent), 0}, rat(1), false});

    // Y_t = [t, 1]^2.
    ConstraintSystem planar(3);
    planar.gt(var(3, 0));
    planar.ge(var(3, 1) - var(3, 0));
    planar.le(lin(3, {{1, 1}}, -1));
    planar.ge(var(3, 2) - var(3, 0));
    planar.le(lin(3, {{2, 1}}, -1));
    out.push_back({"shrinking square", {SemilinearSet::from_system(planar), 0}, rat(1), false});

    // Constant half-open slices [0, 1): the closedness hypothesis fails.
    ConstraintSystem half(2);
    half.gt(var(2, 0));
    half.ge(var(2, 1));
    half.lt(lin(2, {{1, 1}}, -1));
    out.push_back(
        {"half-open slices", {SemilinearSet::from_system(half), 0}, std::nullopt, true});
    return out;
}

CellPtr strange_cell() {
    // Height over the open unit square: plateaus at 1 over the two lower
    // corners, 0 on the upper wedge, linear in between. The plateau closures
    // meet only at the boundary point (1/2, 0). Pieces are listed explicitly
    // (with agreeing values on shared borders) to keep the certification and
    // the downstream triangulation small.
    const AffineForm a = lin(2, {{0, -2}, {1, -2}}, 2); // 2 - 2x - 2y
    const AffineForm b = lin(2, {{0, 2}, {1, -2}});     // 2x - 2y
    const AffineForm left = lin(2, {{0, 1}}, rat(-1, 2));
    PLFunction height(2);
    auto hpiece = [&](std::initializer_list<LinearConstraint> cons, const AffineForm& value) {
        ConstraintSystem dom(2);
        for (const auto& c : cons) dom.add(c.form, c.rel);
        height.pieces.push_back({std::move(dom), value});
    };
    const AffineForm one2 = AffineForm::constant_form(2, rat(1));
    const AffineForm zero2 = AffineForm::constant_form(2, rat(0));
    hpiece({{one2 - a, Rel::LE}}, one2);
    hpiece({{left, Rel::LE}, {-a, Rel::LE}, {a - one2, Rel::LE}}, a);
    hpiece({{left, Rel::LE}, {a, Rel::LE}}, zero2);
    hpiece({{one2 - b, Rel::LE}}, one2);
    hpiece({{-left, Rel::LE}, {-b, Rel::LE}, {b - one2, Rel::LE}}, b);
    hpiece({{-left, Rel::LE}, {b, Rel::LE}}, zero2);
    CellPtr over = make_graph_cell(open_square(), height);

    // Swing over the same square: positive left of x = 1/2, negative right,
    // clamped between -hat and hat for hat = max(0, 1 - 4y - |4x - 2|), whose
    // support narrows toward the same boundary point.
    PLFunction swing(2);
    auto spiece = [&](std::initializer_list<LinearConstraint> cons, const AffineForm& value) {
        ConstraintSystem dom(2);
        for (const auto& c : cons) dom.add(c.form, c.rel);
        swing.pieces.push_back({std::move(dom), value});
    };
    const AffineForm hat_left = lin(2, {{0, 4}, {1, -4}}, -1);   // 1 - 4y - (2 - 4x)
    const AffineForm hat_right = lin(2, {{0, -4}, {1, -4}}, 3);  // 1 - 4y - (4x - 2)
    const AffineForm u = lin(2, {{0, -4}}, 2);                   // 2 - 4x
    spiece({{hat_left, Rel::LE}}, zero2);
    spiece({{hat_right, Rel::LE}}, zero2);
    // |4x - 2| <= (1 - 4y) / 2: the clamp is inactive.
    spiece({{lin(2, {{0, 8}, {1, 4}}, -5), Rel::LE}, {lin(2, {{0, -8}, {1, 4}}, 3), Rel::LE}}, u);
    spiece({{left, Rel::LE}, {-hat_left, Rel::LE}, {lin(2, {{0, 8}, {1, -4}}, -3), Rel::LE}},
           hat_left);
    spiece({{-left, Rel::LE}, {-hat_right, Rel::LE}, {lin(2, {{0, -8}, {1, -4}}, 5), Rel::LE}},
           -hat_right);
    return make_graph_cell(over, lift(swing));
}

SemilinearSet slit_annulus_closure() {
    return set_difference(closed_box({{rat(-2), rat(2)}, {rat(-2), rat(2)}}),
                          open_box({{rat(-1), rat(1)}, {rat(-1), rat(1)}}));
}

SemilinearSet slit_annulus() {
    ConstraintSystem slit(2);
    slit.eq(var(2, 1));
    slit.ge(lin(2, {{0, 1}}, -1));
    slit.le(lin(2, {{0, 1}}, -2));
    return set_difference(slit_annulus_closure(), SemilinearSet::from_system(slit));
}

std::vector<RefinementCase> refinement_cases() {
    std::vector<RefinementCase> out;
    out.push_back({"split segment", closed_box({{rat(0), rat(1)}}), lin(1, {{0, 1}}, rat(-1, 3))});
    out.push_back({"split square", closed_box({{rat(0), rat(1)}, {rat(0), rat(1)}}),
                   lin(2, {{0, 1}, {1, -1}})});
    out.push_back({"split triangle", triangle(), lin(2, {{0, -1}, {1, 2}})});
    out.push_back({"split annulus", slit_annulus_closure(), lin(2, {{1, 1}}, rat(-1, 2))});
    out.push_back({"split cube",
                   closed_box({{rat(0), rat(1)}, {rat(0), rat(1)}, {rat(0), rat(1)}}),
                   lin(3, {{0, 1}, {1, 1}, {2, 1}}, rat(-3, 2))});
    return out;
}

} // namespace ominal::fixtures
