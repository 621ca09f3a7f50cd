#include "ominal/cover.hpp"

#include "ominal/errors.hpp"

#include <numeric>

namespace ominal {

namespace {

SemilinearSet halfspace_gt(int dim, int axis) {
    ConstraintSystem sys(dim);
    sys.gt(AffineForm::variable(dim, axis));
    return SemilinearSet::from_system(sys);
}

// Project away axes [from, from + count), highest first.
SemilinearSet project_range(SemilinearSet x, int from, int count) {
    for (int i = count - 1; i >= 0; --i) x = fm_project_set(x, from + i);
    return x;
}

// |y_j - x_j| < eps for all j, with x at axes x0.., y at axes y0.., eps at e.
ConstraintSystem box_near(int dim, int x0, int y0, int e, int count) {
    ConstraintSystem sys(dim);
    for (int j = 0; j < count; ++j) {
        const AffineForm gap =
            AffineForm::variable(dim, y0 + j) - AffineForm::variable(dim, x0 + j);
        const AffineForm eps = AffineForm::variable(dim, e);
        sys.lt(gap - eps);
        sys.lt(-gap - eps);
    }
    return sys;
}

} // namespace

std::optional<Rational> stabilization_t0(const DefinableFamily& fam) {
    const int total = fam.total_space.ambient_dim;
    const int n = total - 1; // spatial dimensions

    // Renumber so the parameter rides axis 0, then clip to positive times.
    std::vector<int> to_front(static_cast<size_t>(total));
    to_front[static_cast<size_t>(fam.parameter_axis)] = 0;
    for (int i = 0, next = 1; i < total; ++i) {
        if (i != fam.parameter_axis) to_front[static_cast<size_t>(i)] = next++;
    }
    const SemilinearSet F =
        set_intersection(embed(fam.total_space, total, to_front), halfspace_gt(total, 0));
    const int D = n + 1;

    // The slices must shrink: a point of Y_t outside some earlier Y_t' is a
    // monotonicity violation. Axes (t, t', x).
    {
        std::vector<int> at_t(static_cast<size_t>(D)), at_tp(static_cast<size_t>(D));
        at_t[0] = 0;
        at_tp[0] = 1;
        for (int j = 1; j <= n; ++j) at_t[static_cast<size_t>(j)] = at_tp[static_cast<size_t>(j)] = j + 1;
        ConstraintSystem order(D + 1);
        order.gt(AffineForm::variable(D + 1, 1));
        order.lt(AffineForm::variable(D + 1, 1) - AffineForm::variable(D + 1, 0));
        SemilinearSet bad = set_intersection(embed(F, D + 1, at_t),
                                             set_complement(embed(F, D + 1, at_tp)));
        bad = set_intersection(bad, SemilinearSet::from_system(order));
        if (!is_empty(bad)) throw NotDecreasing("family slices grow somewhere");
    }

    // Every slice must be closed: compute the fiberwise closure over axes
    // (t, x, eps, y) and compare. A closure point outside F is a violation.
    {
        const int dim = D + 1 + n; // eps at D, y at D+1..
        std::vector<int> as_y(static_cast<size_t>(D));
        as_y[0] = 0;
        for (int j = 1; j <= n; ++j) as_y[static_cast<size_t>(j)] = D + j;
        SemilinearSet reach = set_intersection(
            embed(F, dim, as_y), SemilinearSet::from_system(box_near(dim, 1, D + 1, D, n)));
        reach = project_range(reach, D + 1, n);
        SemilinearSet has_gap = set_difference(halfspace_gt(D + 1, D), reach);
        has_gap = fm_project_set(has_gap, D);
        const SemilinearSet cl_fib =
            set_intersection(set_complement(has_gap), halfspace_gt(D, 0));
        if (!is_empty(set_difference(cl_fib, F))) {
            throw NotClosedSlices("some slice is not closed");
        }
    }

    // Exit time s(x) = sup { t : x in Y_t }. Its graph is carved fiberwise:
    // t is approached from below by membership times and nothing later
    // belongs. Shadow over axes (t, u, x); approach over (t, x, eps, u).
    SemilinearSet shadow(D);
    {
        std::vector<int> at_u(static_cast<size_t>(D));
        at_u[0] = 1;
        for (int j = 1; j <= n; ++j) at_u[static_cast<size_t>(j)] = j + 1;
        ConstraintSystem later(D + 1);
        later.gt(AffineForm::variable(D + 1, 1) - AffineForm::variable(D + 1, 0));
        shadow = fm_project_set(
            set_intersection(embed(F, D + 1, at_u), SemilinearSet::from_system(later)), 1);
    }
    SemilinearSet graph_s(D);
    {
        const int dim = D + 2; // eps at D, u at D+1
        std::vector<int> at_u(static_cast<size_t>(D));
        at_u[0] = D + 1;
        for (int j = 1; j <= n; ++j) at_u[static_cast<size_t>(j)] = j;
        const AffineForm t = AffineForm::variable(dim, 0);
        const AffineForm eps = AffineForm::variable(dim, D);
        const AffineForm u = AffineForm::variable(dim, D + 1);
        ConstraintSystem window(dim);
        window.le(u - t);
        window.gt(u - t + eps);
        SemilinearSet approach =
            set_intersection(embed(F, dim, at_u), SemilinearSet::from_system(window));
        approach = fm_project_set(approach, D + 1);
        SemilinearSet gap_below = set_difference(halfspace_gt(D + 1, D), approach);
        gap_below = fm_project_set(gap_below, D);
        graph_s = set_intersection(set_complement(gap_below),
                                   set_intersection(set_complement(shadow), halfspace_gt(D, 0)));
    }

    // Points that never leave: in some slice but under no finite graph point.
    const SemilinearSet s_inf =
        set_difference(fm_project_set(F, 0), fm_project_set(graph_s, 0));

    // Local maxima of s: no strictly later graph point and no infinite point
    // within eps. Violations over (t, x, eps, u, y) and (t, x, eps, y).
    SemilinearSet viol(D + 1);
    {
        const int dim = D + 2 + n; // eps at D, u at D+1, y at D+2..
        std::vector<int> at_uy(static_cast<size_t>(D));
        at_uy[0] = D + 1;
        for (int j = 1; j <= n; ++j) at_uy[static_cast<size_t>(j)] = D + 1 + j;
        ConstraintSystem later(dim);
        later.gt(AffineForm::variable(dim, D + 1) - AffineForm::variable(dim, 0));
        SemilinearSet part = set_intersection(embed(graph_s, dim, at_uy),
                                              SemilinearSet::from_system(later));
        part = set_intersection(part,
                                SemilinearSet::from_system(box_near(dim, 1, D + 2, D, n)));
        viol = project_range(part, D + 1, n + 1);
    }
    {
        const int dim = D + 1 + n; // eps at D, y at D+1..
        std::vector<int> at_y(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) at_y[static_cast<size_t>(j)] = D + 1 + j;
        SemilinearSet part = set_intersection(
            embed(s_inf, dim, at_y),
            SemilinearSet::from_system(box_near(dim, 1, D + 1, D, n)));
        viol = set_union(viol, project_range(part, D + 1, n));
    }
    const SemilinearSet good_eps =
        fm_project_set(set_difference(halfspace_gt(D + 1, D), viol), D);
    const SemilinearSet local_max = set_intersection(graph_s, good_eps);

    // The local maximum values along the parameter axis; finitely many.
    const SemilinearSet values = project_range(local_max, 1, n);
    const Breakline line = normalize_1d(values);
    for (bool in : line.interval_in) {
        if (in) throw Error("local maximum values form an interval");
    }
    std::optional<Rational> t0;
    for (size_t i = 0; i < line.points.size(); ++i) {
        if (line.point_in[i] && sign_of(line.points[i]) > 0) {
            t0 = line.points[i];
            break;
        }
    }

    // Certify Y_t equals the intersection of all earlier slices below t0.
    // Z over axes (t, u, x): complement of "some earlier slice misses x".
    {
        std::vector<int> at_u(static_cast<size_t>(D));
        at_u[0] = 1;
        for (int j = 1; j <= n; ++j) at_u[static_cast<size_t>(j)] = j + 1;
        ConstraintSystem earlier(D + 1);
        earlier.gt(AffineForm::variable(D + 1, 1));
        earlier.lt(AffineForm::variable(D + 1, 1) - AffineForm::variable(D + 1, 0));
        SemilinearSet missed = set_intersection(set_complement(embed(F, D + 1, at_u)),
                                                SemilinearSet::from_system(earlier));
        SemilinearSet z = set_complement(fm_project_set(missed, 1));
        SemilinearSet bad =
            set_intersection(set_difference(z, F), halfspace_gt(D, 0));
        if (t0) {
            ConstraintSystem below(D);
            below.lt(AffineForm::variable(D, 0) - AffineForm::constant_form(D, *t0));
            bad = set_intersection(bad, SemilinearSet::from_system(below));
        }
        if (!is_empty(bad)) throw Error("stabilization certificate failed");
    }

    return t0;
}

} // namespace ominal
