#include "ominal/cells.hpp"

#include "ominal/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace ominal {

namespace {

bool form_less(const AffineForm& a, const AffineForm& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.constant < b.constant;
}

std::vector<int> identity_axes(int n) {
    std::vector<int> axes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axes[static_cast<size_t>(i)] = i;
    return axes;
}

Rational band_sample_height(const Cell& cell) {
    const Point& base_sample = cell.base->sample;
    std::optional<Rational> lo_v, hi_v;
    if (cell.f) lo_v = cell.f->eval(base_sample);
    if (cell.g) hi_v = cell.g->eval(base_sample);
    if (lo_v && hi_v) return (*lo_v + *hi_v) / 2;
    if (lo_v) return *lo_v + 1;
    if (hi_v) return *hi_v - 1;
    return Rational(0);
}

} // namespace

CellPtr make_point_cell(const Rational& value) {
    auto cell = std::make_shared<Cell>();
    cell->kind = CellKind::Point;
    cell->ambient_dim = 1;
    cell->dim = 0;
    cell->point_value = value;
    cell->underlying = SemilinearSet::single_point({value});
    cell->sample = {value};
    return cell;
}

CellPtr make_interval_cell(std::optional<Rational> lo, std::optional<Rational> hi,
                           bool lo_strict, bool hi_strict) {
    if (lo && hi && *lo >= *hi)
        throw InvalidCell("interval endpoints must be strictly ordered");
    auto cell = std::make_shared<Cell>();
    cell->kind = CellKind::Interval;
    cell->ambient_dim = 1;
    cell->dim = 1;
    cell->lo = lo;
    cell->hi = hi;
    cell->lo_strict = lo_strict;
    cell->hi_strict = hi_strict;
    ConstraintSystem sys(1);
    const AffineForm x = AffineForm::variable(1, 0);
    if (lo) sys.add(AffineForm::constant_form(1, *lo) - x, lo_strict ? Rel::LT : Rel::LE);
    if (hi) sys.add(x - AffineForm::constant_form(1, *hi), hi_strict ? Rel::LT : Rel::LE);
    cell->underlying = SemilinearSet::from_system(sys);
    if (lo && hi)
        cell->sample = {(*lo + *hi) / 2};
    else if (lo)
        cell->sample = {*lo + 1};
    else if (hi)
        cell->sample = {*hi - 1};
    else
        cell->sample = {Rational(0)};
    return cell;
}

CellPtr make_graph_cell(CellPtr base, PLFunction f) {
    if (!base) throw InvalidCell("graph cell without a base");
    if (f.dim != base->ambient_dim)
        throw DimensionMismatch("graph function over the wrong space");
    ContinuityReport report = pl_continuity(f, base->underlying);
    if (!report.ok) throw InvalidCell("graph function: " + report.detail);
    auto cell = std::make_shared<Cell>();
    cell->kind = CellKind::Graph;
    cell->ambient_dim = base->ambient_dim + 1;
    cell->dim = base->dim;
    cell->underlying = graph_set(f, base->underlying);
    cell->sample = base->sample;
    cell->sample.push_back(f.eval(base->sample));
    cell->base = std::move(base);
    cell->f = std::move(f);
    return cell;
}

CellPtr make_band_cell(CellPtr base, std::optional<PLFunction> lower,
                       std::optional<PLFunction> upper) {
    if (!base) throw InvalidCell("band cell without a base");
    for (const auto* wall : {&lower, &upper}) {
        if (!wall->has_value()) continue;
        if ((*wall)->dim != base->ambient_dim)
            throw DimensionMismatch("band wall over the wrong space");
        ContinuityReport report = pl_continuity(**wall, base->underlying);
        if (!report.ok) throw InvalidCell("band wall: " + report.detail);
    }
    if (lower && upper) {
        // Degenerate bands are rejected: the walls must satisfy lower < upper
        // everywhere on the base.
        for (const auto& bp : base->underlying.pieces) {
            for (const auto& lp : lower->pieces) {
                for (const auto& up : upper->pieces) {
                    ConstraintSystem sys =
                        bp.intersect(lp.domain).intersect(up.domain);
                    sys.ge(lp.value - up.value);
                    if (is_feasible(sys))
                        throw InvalidCell("degenerate band: walls touch or cross");
                }
            }
        }
    }
    auto cell = std::make_shared<Cell>();
    cell->kind = CellKind::Band;
    cell->ambient_dim = base->ambient_dim + 1;
    cell->dim = base->dim + 1;
    cell->underlying = band_set(lower ? &*lower : nullptr, upper ? &*upper : nullptr,
                                base->underlying);
    cell->base = std::move(base);
    cell->f = std::move(lower);
    cell->g = std::move(upper);
    cell->sample = cell->base->sample;
    cell->sample.push_back(band_sample_height(*cell));
    return cell;
}

std::vector<CellPtr> decompose_space(int n, const std::vector<AffineForm>& forms) {
    if (n < 1) throw DimensionMismatch("decomposition needs at least one variable");
    for (const auto& form : forms) {
        if (form.dim() != n) throw DimensionMismatch("form over the wrong space");
    }
    const std::vector<AffineForm> shape = canonical_forms(forms);

    if (n == 1) {
        std::vector<Rational> roots;
        for (const auto& form : shape) {
            if (form.coeffs[0] != 0) roots.push_back(-form.constant / form.coeffs[0]);
        }
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        std::vector<CellPtr> cells;
        if (roots.empty()) {
            cells.push_back(make_interval_cell(std::nullopt, std::nullopt));
            return cells;
        }
        cells.push_back(make_interval_cell(std::nullopt, roots.front()));
        for (size_t i = 0; i < roots.size(); ++i) {
            cells.push_back(make_point_cell(roots[i]));
            if (i + 1 < roots.size())
                cells.push_back(make_interval_cell(roots[i], roots[i + 1]));
        }
        cells.push_back(make_interval_cell(roots.back(), std::nullopt));
        return cells;
    }

    // Forms mentioning the last coordinate become boundary functions
    // x_n = b(x'); the rest pass through to the base.
    const int axis = n - 1;
    std::vector<AffineForm> walls;
    std::vector<AffineForm> base_forms;
    for (const auto& form : shape) {
        const Rational& c = form.coeffs[static_cast<size_t>(axis)];
        if (c == 0) {
            base_forms.push_back(form.drop_axis(axis));
            continue;
        }
        AffineForm wall(n);
        for (int i = 0; i < axis; ++i)
            wall.coeffs[static_cast<size_t>(i)] = -form.coeffs[static_cast<size_t>(i)] / c;
        wall.constant = -form.constant / c;
        walls.push_back(wall.drop_axis(axis));
    }
    std::sort(walls.begin(), walls.end(), form_less);
    walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
    for (size_t i = 0; i < walls.size(); ++i) {
        for (size_t j = i + 1; j < walls.size(); ++j) {
            AffineForm diff = walls[i] - walls[j];
            if (!diff.is_constant()) base_forms.push_back(diff);
        }
    }

    std::vector<CellPtr> cells;
    for (const CellPtr& base : decompose_space(n - 1, base_forms)) {
        // Wall order is constant across the base cell because pairwise
        // differences are base forms; the stored sample decides it.
        std::vector<std::pair<Rational, const AffineForm*>> heights;
        for (const auto& wall : walls) heights.push_back({wall.eval(base->sample), &wall});
        std::sort(heights.begin(), heights.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<const AffineForm*> levels;
        for (size_t i = 0; i < heights.size(); ++i) {
            if (i == 0 || heights[i].first != heights[i - 1].first)
                levels.push_back(heights[i].second);
        }
        std::optional<PLFunction> previous;
        for (const AffineForm* wall : levels) {
            PLFunction level = PLFunction::affine(*wall);
            cells.push_back(make_band_cell(base, previous, level));
            cells.push_back(make_graph_cell(base, level));
            previous = std::move(level);
        }
        cells.push_back(make_band_cell(base, previous, std::nullopt));
    }
    return cells;
}

CellDecomposition decompose(const SemilinearSet& x) {
    CellDecomposition d;
    d.target = x;
    for (CellPtr& cell : decompose_space(x.ambient_dim, constraint_forms(x))) {
        // Every constraint form has constant sign on the cell, so membership
        // at the sample decides membership of the whole cell.
        if (x.contains(cell->sample)) d.cells.push_back(std::move(cell));
    }
    return d;
}

PartitionReport verify_partition(const CellDecomposition& d) {
    PartitionReport report;
    auto flag = [&report](std::string issue) {
        report.ok = false;
        report.issues.push_back(std::move(issue));
    };
    SemilinearSet covered = SemilinearSet::empty_set(d.target.ambient_dim);
    for (size_t i = 0; i < d.cells.size(); ++i) {
        const Cell& cell = *d.cells[i];
        if (cell.ambient_dim != d.target.ambient_dim) {
            flag("cell lives in the wrong space");
            continue;
        }
        if (!is_subset(cell.underlying, d.target)) flag("cell leaves the target");
        for (size_t j = i + 1; j < d.cells.size(); ++j) {
            if (!is_empty(set_intersection(cell.underlying, d.cells[j]->underlying)))
                flag("two cells overlap");
        }
        covered = set_union(covered, cell.underlying);
    }
    if (!sets_equal(covered, d.target)) flag("cells do not cover the target");

    // Bases must tile compatibly: a cell projects exactly onto its base, and
    // two bases are either equal or disjoint.
    std::vector<CellPtr> bases;
    for (const CellPtr& cell : d.cells) {
        if (!cell->base) continue;
        if (!sets_equal(fm_project_set(cell->underlying, cell->ambient_dim - 1),
                        cell->base->underlying))
            flag("cell does not project onto its base");
        bases.push_back(cell->base);
    }
    for (size_t i = 0; i < bases.size(); ++i) {
        for (size_t j = i + 1; j < bases.size(); ++j) {
            if (bases[i] == bases[j]) continue;
            if (sets_equal(bases[i]->underlying, bases[j]->underlying)) continue;
            if (!is_empty(set_intersection(bases[i]->underlying, bases[j]->underlying)))
                flag("two bases neither equal nor disjoint");
        }
    }
    return report;
}

std::vector<PLFunction> PLHomotopy::total_map() const {
    std::vector<PLFunction> comps;
    comps.reserve(static_cast<size_t>(map.cod_dim));
    for (int j = 0; j < map.cod_dim; ++j) comps.push_back(map.component(j));
    return comps;
}

namespace {

Contraction contract_point(const Cell& cell) {
    PwAffineMap map;
    map.dom_dim = 2;
    map.cod_dim = 1;
    map.pieces.push_back({ConstraintSystem(2), {AffineForm::variable(2, 1)}});
    return {{std::move(map), Rational(0), Rational(1), cell.underlying},
            {cell.point_value}};
}

Contraction contract_interval(const Cell& cell) {
    const Rational a = *cell.lo;
    const Rational b = *cell.hi;
    const AffineForm t = AffineForm::variable(2, 0);
    const AffineForm x = AffineForm::variable(2, 1);
    auto cf = [](const Rational& v) { return AffineForm::constant_form(2, v); };

    PwAffineMap map;
    map.dom_dim = 2;
    map.cod_dim = 1;
    Rational duration;
    Point target;
    if (cell.lo_strict == cell.hi_strict) {
        // Clamp symmetrically into [a + t, b - t]; both endpoint styles keep
        // the moving walls inside the cell.
        duration = (b - a) / 2;
        target = {(a + b) / 2};
        ConstraintSystem low(2);
        low.le(x - t - cf(a));
        map.pieces.push_back({low, {t + cf(a)}});
        ConstraintSystem mid(2);
        mid.le(t + cf(a) - x);
        mid.le(x + t - cf(b));
        map.pieces.push_back({mid, {x}});
        ConstraintSystem high(2);
        high.le(cf(b) - t - x);
        map.pieces.push_back({high, {cf(b) - t}});
    } else if (cell.hi_strict) {
        // [a, b): slide everything down onto the closed end.
        duration = b - a;
        target = {a};
        ConstraintSystem keep(2);
        keep.le(x + t - cf(b));
        map.pieces.push_back({keep, {x}});
        ConstraintSystem slide(2);
        slide.le(cf(b) - t - x);
        map.pieces.push_back({slide, {cf(b) - t}});
    } else {
        // (a, b]
        duration = b - a;
        target = {b};
        ConstraintSystem keep(2);
        keep.le(cf(a) + t - x);
        map.pieces.push_back({keep, {x}});
        ConstraintSystem slide(2);
        slide.le(x - t - cf(a));
        map.pieces.push_back({slide, {cf(a) + t}});
    }
    return {{std::move(map), Rational(0), duration, cell.underlying}, std::move(target)};
}

// (x' , y) -> (x', f(x')) composed over the base contraction: the graph rides
// along with its base.
Contraction contract_graph(const Cell& cell) {
    const int n = cell.ambient_dim;
    Contraction base = contraction(cell.base);

    PwAffineMap lift;
    lift.dom_dim = n - 1;
    lift.cod_dim = n;
    for (const auto& piece : cell.f->pieces) {
        std::vector<AffineForm> rows;
        for (int i = 0; i + 1 < n; ++i) rows.push_back(AffineForm::variable(n - 1, i));
        rows.push_back(piece.value);
        lift.pieces.push_back({piece.domain, std::move(rows)});
    }

    std::vector<AffineForm> keep;
    for (int i = 0; i < n; ++i) keep.push_back(AffineForm::variable(n + 1, i));
    PwAffineMap drop_height = PwAffineMap::from_rows(std::move(keep));

    PwAffineMap map = lift.compose(base.homotopy.map.compose(drop_height));
    Point target = base.target;
    target.push_back(cell.f->eval(base.target));
    return {{std::move(map), base.homotopy.t0, base.homotopy.t1, cell.underlying},
            std::move(target)};
}

Contraction contract_band(const Cell& cell) {
    const int n = cell.ambient_dim;
    const Cell& base = *cell.base;

    // Sup of the half-width (g - f)/2 over the base; finite because the cell
    // is bounded. The clamp only ever moves points toward the midline, so the
    // radius may overshoot thin parts of the band without leaving it.
    Rational radius(0);
    for (const auto& bp : base.underlying.pieces) {
        for (const auto& lp : cell.f->pieces) {
            for (const auto& up : cell.g->pieces) {
                ConstraintSystem sys = bp.intersect(lp.domain).intersect(up.domain);
                if (!is_feasible(sys)) continue;
                ConstraintSystem ext = embed_system(sys, n, identity_axes(n - 1));
                AffineForm width = (up.value - lp.value) * Rational(1, 2);
                ext.eq(AffineForm::variable(n, n - 1) - width.insert_axis(n - 1));
                std::optional<AxisBound> bound = axis_upper_bound(ext, n - 1);
                if (!bound) throw UnboundedCell("band of unbounded width");
                radius = std::max(radius, bound->value);
            }
        }
    }

    // Stage one: shear the fiber toward the midline h = (f+g)/2 with a
    // shrinking clamp, finishing on the graph of h at time `radius`.
    PLFunction mid = pl_scale(pl_add(*cell.f, *cell.g), Rational(1, 2));
    const int N = n + 1; // (t, x', y)
    std::vector<int> shifted(static_cast<size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) shifted[static_cast<size_t>(i)] = i + 1;
    const AffineForm t = AffineForm::variable(N, 0);
    const AffineForm y = AffineForm::variable(N, n);
    const AffineForm r = AffineForm::constant_form(N, radius);

    PwAffineMap stage_one;
    stage_one.dom_dim = N;
    stage_one.cod_dim = n;
    for (const auto& piece : mid.pieces) {
        const ConstraintSystem dom = embed_system(piece.domain, N, shifted);
        AffineForm h = piece.value.insert_axis(0); // (t, x')
        h = h.insert_axis(n);                      // (t, x', y)
        const AffineForm z = y - h;
        std::vector<AffineForm> xrows;
        for (int i = 1; i < n; ++i) xrows.push_back(AffineForm::variable(N, i));

        ConstraintSystem low = dom;
        low.le(z - t + r);
        std::vector<AffineForm> low_rows = xrows;
        low_rows.push_back(h + t - r);
        stage_one.pieces.push_back({low, std::move(low_rows)});

        ConstraintSystem inner = dom;
        inner.le(t - r - z);
        inner.le(z + t - r);
        std::vector<AffineForm> inner_rows = xrows;
        inner_rows.push_back(y);
        stage_one.pieces.push_back({inner, std::move(inner_rows)});

        ConstraintSystem high = dom;
        high.le(r - t - z);
        std::vector<AffineForm> high_rows = xrows;
        high_rows.push_back(h + r - t);
        stage_one.pieces.push_back({high, std::move(high_rows)});
    }

    // Stage two: contract the midline graph, entered through the stage-one
    // retraction at time `radius`.
    Contraction tail = contraction(make_graph_cell(cell.base, mid));
    PwAffineMap settle = at_parameter(stage_one, radius);
    PwAffineMap shift;
    shift.dom_dim = N;
    shift.cod_dim = N;
    std::vector<int> lifted(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) lifted[static_cast<size_t>(i)] = i + 1;
    for (const auto& piece : settle.pieces) {
        std::vector<AffineForm> rows;
        rows.push_back(t - r);
        for (const auto& row : piece.rows) rows.push_back(row.insert_axis(0));
        shift.pieces.push_back({embed_system(piece.domain, N, lifted), std::move(rows)});
    }
    PwAffineMap stage_two = tail.homotopy.map.compose(shift);

    PwAffineMap map;
    map.dom_dim = N;
    map.cod_dim = n;
    for (auto& piece : stage_one.pieces) {
        piece.domain.le(t - r);
        map.pieces.push_back(std::move(piece));
    }
    for (auto& piece : stage_two.pieces) {
        piece.domain.ge(AffineForm::variable(N, 0) - r);
        if (!is_feasible(piece.domain)) continue;
        map.pieces.push_back(std::move(piece));
    }
    const Rational total = radius + tail.homotopy.t1;
    return {{std::move(map), Rational(0), total, cell.underlying}, tail.target};
}

} // namespace

Contraction contraction(const CellPtr& cell) {
    if (!cell) throw InvalidCell("contraction of a null cell");
    if (!is_bounded(cell->underlying)) throw UnboundedCell("contraction needs a bounded cell");
    switch (cell->kind) {
    case CellKind::Point:
        return contract_point(*cell);
    case CellKind::Interval:
        return contract_interval(*cell);
    case CellKind::Graph:
        return contract_graph(*cell);
    case CellKind::Band:
        return contract_band(*cell);
    }
    throw InvalidCell("unknown cell kind");
}

HomotopyReport verify_contraction(const Contraction& c, const CellPtr& cell) {
    HomotopyReport report;
    auto flag = [&report](std::string issue) {
        report.ok = false;
        report.issues.push_back(std::move(issue));
    };
    const int n = cell->ambient_dim;
    const PLHomotopy& h = c.homotopy;
    if (h.map.dom_dim != n + 1 || h.map.cod_dim != n) {
        flag("homotopy dimensions do not match the cell");
        return report;
    }

    ConstraintSystem timeband(n + 1);
    const AffineForm t = AffineForm::variable(n + 1, 0);
    timeband.ge(t - AffineForm::constant_form(n + 1, h.t0));
    timeband.le(t - AffineForm::constant_form(n + 1, h.t1));
    std::vector<int> lifted(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) lifted[static_cast<size_t>(i)] = i + 1;
    const SemilinearSet region = set_intersection(
        embed(cell->underlying, n + 1, lifted), SemilinearSet::from_system(timeband));

    SemilinearSet domains = SemilinearSet::empty_set(n + 1);
    for (const auto& piece : h.map.pieces)
        domains = set_union(domains, SemilinearSet::from_system(piece.domain));
    if (!is_subset(region, domains)) flag("pieces do not cover the whole slab");

    auto check_endpoint = [&](const Rational& when, bool to_target) {
        PwAffineMap frozen = at_parameter(h.map, when);
        for (const auto& piece : frozen.pieces) {
            SemilinearSet dom =
                set_intersection(SemilinearSet::from_system(piece.domain), cell->underlying);
            if (is_empty(dom)) continue;
            for (int j = 0; j < n; ++j) {
                AffineForm expect = to_target
                                        ? AffineForm::constant_form(n, c.target[static_cast<size_t>(j)])
                                        : AffineForm::variable(n, j);
                AffineForm diff = piece.rows[static_cast<size_t>(j)] - expect;
                if (diff.is_zero()) continue;
                if (!is_empty(set_intersection(dom, nonzero_locus(diff)))) {
                    flag(to_target ? "does not end at the target"
                                   : "does not start at the identity");
                    return;
                }
            }
        }
    };
    check_endpoint(h.t0, false);
    check_endpoint(h.t1, true);

    const SemilinearSet outside = set_complement(cell->underlying);
    for (const auto& piece : h.map.pieces) {
        for (const auto& out_piece : outside.pieces) {
            ConstraintSystem sys = piece.domain;
            for (const auto& constraint : out_piece.constraints)
                sys.add(compose_affine(constraint.form, piece.rows), constraint.rel);
            if (!is_empty(set_intersection(SemilinearSet::from_system(sys), region))) {
                flag("homotopy leaves the cell");
                break;
            }
        }
        if (!report.ok && report.issues.back() == "homotopy leaves the cell") break;
    }

    std::vector<SemilinearSet> restricted;
    std::vector<SemilinearSet> closures;
    std::vector<const PwAffineMap::Piece*> live;
    for (const auto& piece : h.map.pieces) {
        SemilinearSet r =
            set_intersection(SemilinearSet::from_system(piece.domain), region);
        if (is_empty(r)) continue;
        closures.push_back(closure(r));
        restricted.push_back(std::move(r));
        live.push_back(&piece);
    }
    for (size_t i = 0; i < live.size() && report.ok; ++i) {
        for (size_t j = i + 1; j < live.size(); ++j) {
            SemilinearSet seam =
                set_intersection(set_intersection(closures[i], closures[j]), region);
            if (is_empty(seam)) continue;
            bool bad = false;
            for (int row = 0; row < n && !bad; ++row) {
                AffineForm diff =
                    live[i]->rows[static_cast<size_t>(row)] - live[j]->rows[static_cast<size_t>(row)];
                if (diff.is_zero()) continue;
                bad = !is_empty(set_intersection(seam, nonzero_locus(diff)));
            }
            if (bad) {
                flag("pieces disagree on a seam");
                break;
            }
        }
    }
    return report;
}

} // namespace ominal
