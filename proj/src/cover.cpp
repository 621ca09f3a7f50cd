#include "ominal/cover.hpp"

#include "ominal/errors.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace ominal {

namespace {

std::vector<int> identity_map(int n) {
    std::vector<int> map(static_cast<size_t>(n));
    std::iota(map.begin(), map.end(), 0);
    return map;
}

// Lift a form on the base (dim n-1) into fiber coordinates (dim n).
AffineForm lift_wall(const AffineForm& form) { return form.insert_axis(form.dim()); }

// gamma cap for an interval: half the width when both ends shrink, the full
// width when only one does (so the slice still collapses to the closed end).
Rational interval_cap(const Cell& c) {
    const Rational width = *c.hi - *c.lo;
    return c.lo_strict && c.hi_strict ? width / 2 : width;
}

DefinableFamily shrink_impl(const CellPtr& c);

DefinableFamily shrink_point(const Cell& c) {
    ConstraintSystem sys(2);
    sys.gt(AffineForm::variable(2, 0));
    sys.eq(lin(2, {{1, 1}}, -c.point_value));
    return {SemilinearSet::from_system(sys), 0};
}

DefinableFamily shrink_interval(const Cell& c) {
    const Rational a = *c.lo, b = *c.hi;
    const AffineForm t = AffineForm::variable(2, 0);
    const AffineForm x = AffineForm::variable(2, 1);
    if (!c.lo_strict && !c.hi_strict) {
        ConstraintSystem whole(2);
        whole.gt(t);
        whole.ge(x - AffineForm::constant_form(2, a));
        whole.le(x - AffineForm::constant_form(2, b));
        return {SemilinearSet::from_system(whole), 0};
    }
    const Rational cap = interval_cap(c);
    ConstraintSystem moving(2); // gamma_t = t
    moving.gt(t);
    moving.le(t - AffineForm::constant_form(2, cap));
    if (c.lo_strict)
        moving.ge(x - t - AffineForm::constant_form(2, a));
    else
        moving.ge(x - AffineForm::constant_form(2, a));
    if (c.hi_strict)
        moving.le(x + t - AffineForm::constant_form(2, b));
    else
        moving.le(x - AffineForm::constant_form(2, b));
    ConstraintSystem capped(2); // gamma_t = cap
    capped.ge(t - AffineForm::constant_form(2, cap));
    capped.ge(x - AffineForm::constant_form(2, c.lo_strict ? a + cap : a));
    capped.le(x - AffineForm::constant_form(2, c.hi_strict ? b - cap : b));
    return {set_union(SemilinearSet::from_system(moving), SemilinearSet::from_system(capped)), 0};
}

DefinableFamily shrink_graph(const Cell& c) {
    const DefinableFamily base = shrink_impl(c.base);
    const int n = c.ambient_dim;
    const int d = n + 1; // (t, base coords, fiber)
    std::vector<int> dom_map(static_cast<size_t>(n - 1));
    std::iota(dom_map.begin(), dom_map.end(), 1);
    SemilinearSet total(d);
    for (const ConstraintSystem& piece : base.total_space.pieces) {
        for (const auto& fp : c.f->pieces) {
            ConstraintSystem sys = embed_system(piece, d, identity_map(n));
            sys = sys.intersect(embed_system(fp.domain, d, dom_map));
            const AffineForm value = fp.value.insert_axis(0).insert_axis(n);
            sys.eq(AffineForm::variable(d, n) - value);
            total = set_union(total, SemilinearSet::from_system(sys));
        }
    }
    return {total, 0};
}

DefinableFamily shrink_band(const Cell& c) {
    const DefinableFamily base = shrink_impl(c.base);
    const int n = c.ambient_dim;
    const int d = n + 1;
    std::vector<int> dom_map(static_cast<size_t>(n - 1));
    std::iota(dom_map.begin(), dom_map.end(), 1);
    const AffineForm t = AffineForm::variable(d, 0);
    const AffineForm y = AffineForm::variable(d, n);
    SemilinearSet total(d);
    for (const ConstraintSystem& piece : base.total_space.pieces) {
        for (const auto& fp : c.f->pieces) {
            for (const auto& gp : c.g->pieces) {
                ConstraintSystem common = embed_system(piece, d, identity_map(n));
                common = common.intersect(embed_system(fp.domain, d, dom_map));
                common = common.intersect(embed_system(gp.domain, d, dom_map));
                const AffineForm vf = fp.value.insert_axis(0).insert_axis(n);
                const AffineForm vg = gp.value.insert_axis(0).insert_axis(n);
                ConstraintSystem wide = common; // gamma_t = t pointwise
                wide.le(t * Rational(2) - (vg - vf));
                wide.ge(y - vf - t);
                wide.le(y - vg + t);
                ConstraintSystem narrow = common; // fiber collapsed to its midline
                narrow.ge(t * Rational(2) - (vg - vf));
                narrow.eq(y * Rational(2) - vf - vg);
                total = set_union(total, SemilinearSet::from_system(wide));
                total = set_union(total, SemilinearSet::from_system(narrow));
            }
        }
    }
    return {total, 0};
}

DefinableFamily shrink_impl(const CellPtr& c) {
    switch (c->kind) {
    case CellKind::Point:
        return shrink_point(*c);
    case CellKind::Interval:
        if (!c->lo || !c->hi) throw UnboundedCell("cannot shrink an unbounded interval");
        return shrink_interval(*c);
    case CellKind::Graph:
        return shrink_graph(*c);
    case CellKind::Band:
        if (!c->f || !c->g) throw UnboundedCell("cannot shrink a band with a missing wall");
        return shrink_band(*c);
    }
    throw Error("unreachable cell kind");
}

SemilinearSet open_segment_set(const Rational& a, const Rational& b) {
    ConstraintSystem sys(1);
    sys.gt(lin(1, {{0, 1}}, -a));
    sys.lt(lin(1, {{0, 1}}, -b));
    return SemilinearSet::from_system(sys);
}

// Open strip hugging one wall of a band: thickness min((g-f)/2, t) pointwise,
// over the whole base.
SemilinearSet wall_strip(const Cell& c, const Rational& t, bool top) {
    const int n = c.ambient_dim;
    const AffineForm y = AffineForm::variable(n, n - 1);
    const AffineForm thick = AffineForm::constant_form(n, t * 2);
    SemilinearSet out(n);
    for (const ConstraintSystem& piece : c.base->underlying.pieces) {
        for (const auto& fp : c.f->pieces) {
            for (const auto& gp : c.g->pieces) {
                ConstraintSystem common = embed_system(piece, n, identity_map(n - 1));
                common = common.intersect(gp.domain.insert_axis(n - 1));
                common = common.intersect(fp.domain.insert_axis(n - 1));
                const AffineForm vf = lift_wall(fp.value);
                const AffineForm vg = lift_wall(gp.value);
                ConstraintSystem deep = common; // fiber gap at least 2t
                deep.ge(vg - vf - thick);
                ConstraintSystem shallow = common; // strip reaches the midline
                shallow.le(vg - vf - thick);
                if (top) {
                    deep.gt(y - vg + AffineForm::constant_form(n, t));
                    deep.lt(y - vg);
                    shallow.gt(y * Rational(2) - vf - vg);
                    shallow.lt(y - vg);
                } else {
                    deep.gt(y - vf);
                    deep.lt(y - vf - AffineForm::constant_form(n, t));
                    shallow.gt(y - vf);
                    shallow.lt(y * Rational(2) - vf - vg);
                }
                out = set_union(out, SemilinearSet::from_system(deep));
                out = set_union(out, SemilinearSet::from_system(shallow));
            }
        }
    }
    return out;
}

// Cover construction without the nonemptiness gate, so bands over degenerate
// bases can still collect their wall strips.
IndexedCover cover_impl(const CellPtr& c, const Rational& t) {
    IndexedCover cov;
    cov.space = set_difference(c->underlying, slice(shrink_impl(c), t));
    switch (c->kind) {
    case CellKind::Point:
        break;
    case CellKind::Interval: {
        const Rational a = *c->lo, b = *c->hi;
        const Rational gamma = rational_min(interval_cap(*c), t);
        cov.members.push_back({FaceIndex{0, false},
                               c->lo_strict ? open_segment_set(a, a + gamma)
                                            : SemilinearSet::empty_set(1)});
        cov.members.push_back({FaceIndex{0, true},
                               c->hi_strict ? open_segment_set(b - gamma, b)
                                            : SemilinearSet::empty_set(1)});
        break;
    }
    case CellKind::Graph: {
        for (const auto& [face, member] : cover_impl(c->base, t).members) {
            cov.members.push_back({face, graph_set(*c->f, member)});
        }
        break;
    }
    case CellKind::Band: {
        for (const auto& [face, member] : cover_impl(c->base, t).members) {
            cov.members.push_back({face, band_set(&*c->f, &*c->g, member)});
        }
        const int axis = c->dim - 1;
        cov.members.push_back({FaceIndex{axis, false}, wall_strip(*c, t, false)});
        cov.members.push_back({FaceIndex{axis, true}, wall_strip(*c, t, true)});
        break;
    }
    }
    return cov;
}

// Depth-first enumeration of the index subsets with nonempty intersection;
// supersets of an empty intersection are pruned.
template <typename Visit>
void for_each_nonempty_subset(const IndexedCover& cov, Visit&& visit) {
    const int k = static_cast<int>(cov.members.size());
    std::vector<int> current;
    auto rec = [&](auto&& self, int start, const SemilinearSet* running) -> void {
        for (int i = start; i < k; ++i) {
            SemilinearSet next =
                running ? set_intersection(*running, cov.members[static_cast<size_t>(i)].second)
                        : cov.members[static_cast<size_t>(i)].second;
            if (is_empty(next)) continue;
            current.push_back(i);
            visit(current, next);
            self(self, i + 1, &next);
            current.pop_back();
        }
    };
    rec(rec, 0, nullptr);
}

// Structural cells for the nonempty intersections, keyed by member position.
std::map<std::vector<int>, CellPtr> certify_impl(const CellPtr& c, const Rational& t) {
    std::map<std::vector<int>, CellPtr> out;
    switch (c->kind) {
    case CellKind::Point:
        break;
    case CellKind::Interval: {
        const Rational a = *c->lo, b = *c->hi;
        const Rational gamma = rational_min(interval_cap(*c), t);
        if (c->lo_strict) out[{0}] = make_interval_cell(a, a + gamma);
        if (c->hi_strict) out[{1}] = make_interval_cell(b - gamma, b);
        break;
    }
    case CellKind::Graph: {
        for (const auto& [face, cell] : certify_impl(c->base, t)) {
            out[face] = make_graph_cell(cell, *c->f);
        }
        break;
    }
    case CellKind::Band: {
        const auto base_cells = certify_impl(c->base, t);
        const int bottom = 2 * (c->dim - 1), top = bottom + 1;
        const int wall_dim = c->ambient_dim - 1;
        const PLFunction midline = pl_scale(pl_add(*c->f, *c->g), Rational(1, 2));
        const PLFunction bottom_top = pl_min(pl_add(*c->f, PLFunction::constant(wall_dim, t)), midline);
        const PLFunction top_bottom = pl_max(pl_sub(*c->g, PLFunction::constant(wall_dim, t)), midline);
        auto with_strips = [&](const std::vector<int>& face, const CellPtr& base_cell) {
            std::vector<int> fb = face;
            fb.push_back(bottom);
            out[fb] = make_band_cell(base_cell, *c->f, bottom_top);
            std::vector<int> ft = face;
            ft.push_back(top);
            out[ft] = make_band_cell(base_cell, top_bottom, *c->g);
        };
        for (const auto& [face, cell] : base_cells) {
            out[face] = make_band_cell(cell, *c->f, *c->g);
            with_strips(face, cell);
        }
        with_strips({}, c->base);
        break;
    }
    }
    return out;
}

// Single-cell recognition first, cohomology oracle second.
bool connected_acyclic(const SemilinearSet& s, std::string* why) {
    if (decompose(s).cells.size() == 1) return true;
    if (!is_bounded(s)) {
        *why = "intersection is unbounded";
        return false;
    }
    if (components(s).size() != 1) {
        *why = "intersection is not connected";
        return false;
    }
    const auto groups = set_cohomology(s, CoefficientGroup::integers());
    for (size_t p = 0; p < groups.size(); ++p) {
        const AbelianGroup expected = p == 0 ? AbelianGroup{1, {}} : AbelianGroup{};
        if (!(groups[p] == expected)) {
            *why = "intersection is not acyclic";
            return false;
        }
    }
    return true;
}

} // namespace

ShrinkFamily shrink_family(const CellPtr& c) {
    if (!is_bounded(c->underlying)) throw UnboundedCell("cannot shrink an unbounded cell");
    return {c, shrink_impl(c)};
}

IndexedCover cube_face_cover(const CellPtr& c, const Rational& t) {
    if (sign_of(t) <= 0) throw NonPositiveParameter("cover parameter must be positive");
    if (!is_bounded(c->underlying)) throw UnboundedCell("cannot cover an unbounded cell");
    IndexedCover cov = cover_impl(c, t);
    if (is_empty(cov.space)) throw DegenerateSlice("the slice already fills the cell");
    return cov;
}

CoverCertificate certify_cube_cover(const CellPtr& c, const Rational& t,
                                    const IndexedCover& cov) {
    const auto built = certify_impl(c, t);
    CoverCertificate out;
    for_each_nonempty_subset(cov, [&](const std::vector<int>& face, const SemilinearSet& inter) {
        const auto it = built.find(face);
        if (it == built.end()) throw Error("cover intersection lacks a structural cell");
        if (!sets_equal(it->second->underlying, inter)) {
            throw Error("structural cell does not match its cover intersection");
        }
        out.intersections[face] = it->second;
    });
    return out;
}

SimplicialComplex nerve(const IndexedCover& cov) {
    std::vector<std::vector<int>> simplices;
    for_each_nonempty_subset(cov, [&](const std::vector<int>& face, const SemilinearSet&) {
        simplices.push_back(face);
    });
    if (simplices.empty()) return {};
    return SimplicialComplex::from_simplices(std::move(simplices));
}

CoverIsoReport check_iso_pair(const IndexedCover& u, const IndexedCover& v) {
    CoverIsoReport report;
    if (u.members.size() != v.members.size()) {
        return {false, "covers have different index sets", {}};
    }
    for (size_t i = 0; i < u.members.size(); ++i) {
        if (u.members[i].first != v.members[i].first) {
            return {false, "covers have different index sets", {}};
        }
    }
    for (size_t i = 0; i < u.members.size(); ++i) {
        if (!is_subset(u.members[i].second, v.members[i].second)) {
            return {false, "member of the first cover is not contained in its mate",
                    {static_cast<int>(i)}};
        }
    }
    for (size_t i = 0; i < u.members.size(); ++i) {
        if (is_empty(u.members[i].second) != is_empty(v.members[i].second)) {
            return {false, "nonemptiness patterns differ", {static_cast<int>(i)}};
        }
    }

    const int k = static_cast<int>(u.members.size());
    std::vector<int> current;
    std::string why;
    auto rec = [&](auto&& self, int start, const SemilinearSet* ru,
                   const SemilinearSet* rv) -> bool {
        for (int i = start; i < k; ++i) {
            SemilinearSet iu = ru ? set_intersection(*ru, u.members[static_cast<size_t>(i)].second)
                                  : u.members[static_cast<size_t>(i)].second;
            SemilinearSet iv = rv ? set_intersection(*rv, v.members[static_cast<size_t>(i)].second)
                                  : v.members[static_cast<size_t>(i)].second;
            const bool eu = is_empty(iu), ev = is_empty(iv);
            current.push_back(i);
            if (eu != ev) {
                report = {false, "nonemptiness patterns differ", current};
                return false;
            }
            if (!eu) {
                if (!connected_acyclic(iu, &why)) {
                    report = {false, why + " (first cover)", current};
                    return false;
                }
                if (!connected_acyclic(iv, &why)) {
                    report = {false, why + " (second cover)", current};
                    return false;
                }
                if (!self(self, i + 1, &iu, &iv)) return false;
            }
            current.pop_back();
        }
        return true;
    };
    if (!rec(rec, 0, nullptr, nullptr)) return report;
    report.ok = true;
    report.detail = "inclusion induces a cohomology isomorphism";
    return report;
}

std::vector<AbelianGroup> cech_cover_cohomology(const IndexedCover& cov,
                                                const CoefficientGroup& g) {
    struct Entry {
        std::vector<SemilinearSet> comps;
        std::vector<Point> samples;
        int offset = 0;
    };
    std::map<std::vector<int>, Entry> table;
    size_t max_size = 0;
    for_each_nonempty_subset(cov, [&](const std::vector<int>& face, const SemilinearSet& inter) {
        if (!is_bounded(inter)) {
            throw UnboundedIntersection("cover intersection is unbounded");
        }
        Entry e;
        e.comps = components(inter);
        for (const SemilinearSet& comp : e.comps) {
            const auto sample = sample_point(comp);
            if (!sample) throw Error("component without a sample point");
            e.samples.push_back(*sample);
        }
        max_size = std::max(max_size, face.size());
        table[face] = std::move(e);
    });
    if (table.empty()) return {};

    // Basis: components of the (p+1)-fold intersections, tuples in lex order.
    std::vector<int> ranks(max_size, 0);
    for (auto& [face, entry] : table) {
        entry.offset = ranks[face.size() - 1];
        ranks[face.size() - 1] += static_cast<int>(entry.comps.size());
    }

    CochainComplex cx;
    cx.ranks = ranks;
    for (size_t p = 0; p + 1 < max_size; ++p) {
        IntMatrix d(static_cast<size_t>(ranks[p + 1]),
                    std::vector<Integer>(static_cast<size_t>(ranks[p]), Integer(0)));
        for (const auto& [face, entry] : table) {
            if (face.size() != p + 2) continue;
            for (size_t l = 0; l < face.size(); ++l) {
                std::vector<int> sub = face;
                sub.erase(sub.begin() + static_cast<long>(l));
                const Entry& target = table.at(sub);
                const Integer sign = l % 2 == 0 ? 1 : -1;
                for (size_t r = 0; r < entry.comps.size(); ++r) {
                    int hit = -1;
                    for (size_t j = 0; j < target.comps.size(); ++j) {
                        if (target.comps[j].contains(entry.samples[r])) {
                            hit = static_cast<int>(j);
                            break;
                        }
                    }
                    if (hit < 0) throw Error("component not found in a larger intersection");
                    d[static_cast<size_t>(entry.offset) + r]
                     [static_cast<size_t>(target.offset + hit)] += sign;
                }
            }
        }
        cx.maps.push_back(std::move(d));
    }
    cx.validate();
    return cohomology(cx, g);
}

std::vector<AbelianGroup> good_cover_cohomology(const IndexedCover& cov,
                                                const CoverCertificate& certs,
                                                const CoefficientGroup& g) {
    for_each_nonempty_subset(cov, [&](const std::vector<int>& face, const SemilinearSet& inter) {
        const auto it = certs.intersections.find(face);
        if (it == certs.intersections.end()) {
            throw MissingCertificate("nonempty intersection without an acyclicity certificate");
        }
        if (it->second->ambient_dim != inter.ambient_dim ||
            !sets_equal(it->second->underlying, inter)) {
            throw MissingCertificate("certificate does not match its intersection");
        }
    });
    return simplicial_cohomology(nerve(cov), g);
}

} // namespace ominal
