#include "ominal/plmap.hpp"

#include "ominal/fourier_motzkin.hpp"

#include <stdexcept>
#include <utility>

namespace ominal {

SemilinearSet nonzero_locus(const AffineForm& form) {
    SemilinearSet out(form.dim());
    ConstraintSystem neg(form.dim());
    neg.lt(form);
    ConstraintSystem pos(form.dim());
    pos.gt(form);
    if (is_feasible(neg)) out.pieces.push_back(neg.simplified());
    if (is_feasible(pos)) out.pieces.push_back(pos.simplified());
    return out;
}

namespace {

SemilinearSet pieces_union(const PLFunction& f) {
    SemilinearSet out(f.dim);
    for (const auto& piece : f.pieces) {
        if (is_feasible(piece.domain)) out.pieces.push_back(piece.domain.simplified());
    }
    return out;
}

// Refine two functions over a common grid, tagging each joint piece with a
// value chosen by `pick`.
template <typename Pick>
PLFunction refine_pair(const PLFunction& a, const PLFunction& b, Pick pick) {
    if (a.dim != b.dim) throw DimensionMismatch("piecewise functions over different spaces");
    PLFunction out(a.dim);
    for (const auto& pa : a.pieces) {
        for (const auto& pb : b.pieces) {
            ConstraintSystem dom = pa.domain.intersect(pb.domain);
            pick(dom, pa.value, pb.value, out);
        }
    }
    return out;
}

void push_if_feasible(PLFunction& f, ConstraintSystem dom, AffineForm value) {
    if (!is_feasible(dom)) return;
    f.pieces.push_back({dom.simplified(), std::move(value)});
}

} // namespace

PLFunction PLFunction::affine(const AffineForm& value) {
    PLFunction f(value.dim());
    f.pieces.push_back({ConstraintSystem(value.dim()), value});
    return f;
}

PLFunction PLFunction::constant(int dim, const Rational& value) {
    return affine(AffineForm::constant_form(dim, value));
}

Rational PLFunction::eval(const Point& point) const {
    for (const auto& piece : pieces) {
        if (piece.domain.contains(point)) return piece.value.eval(point);
    }
    throw std::out_of_range("point outside every piece of a piecewise function");
}

PLFunction pl_add(const PLFunction& a, const PLFunction& b) {
    return refine_pair(a, b, [](ConstraintSystem& dom, const AffineForm& va,
                                const AffineForm& vb, PLFunction& out) {
        push_if_feasible(out, dom, va + vb);
    });
}

PLFunction pl_sub(const PLFunction& a, const PLFunction& b) {
    return refine_pair(a, b, [](ConstraintSystem& dom, const AffineForm& va,
                                const AffineForm& vb, PLFunction& out) {
        push_if_feasible(out, dom, va - vb);
    });
}

PLFunction pl_scale(const PLFunction& a, const Rational& s) {
    PLFunction out(a.dim);
    for (const auto& piece : a.pieces) out.pieces.push_back({piece.domain, piece.value * s});
    return out;
}

PLFunction pl_min(const PLFunction& a, const PLFunction& b) {
    return refine_pair(a, b, [](ConstraintSystem& dom, const AffineForm& va,
                                const AffineForm& vb, PLFunction& out) {
        ConstraintSystem left = dom;
        left.le(va - vb); // va <= vb
        push_if_feasible(out, std::move(left), va);
        ConstraintSystem right = std::move(dom);
        right.le(vb - va);
        push_if_feasible(out, std::move(right), vb);
    });
}

PLFunction pl_max(const PLFunction& a, const PLFunction& b) {
    return refine_pair(a, b, [](ConstraintSystem& dom, const AffineForm& va,
                                const AffineForm& vb, PLFunction& out) {
        ConstraintSystem left = dom;
        left.le(vb - va); // va >= vb
        push_if_feasible(out, std::move(left), va);
        ConstraintSystem right = std::move(dom);
        right.le(va - vb);
        push_if_feasible(out, std::move(right), vb);
    });
}

bool pl_covers(const PLFunction& f, const SemilinearSet& domain) {
    return is_subset(domain, pieces_union(f));
}

ContinuityReport pl_continuity(const PLFunction& f, const SemilinearSet& domain) {
    ContinuityReport report;
    if (f.dim != domain.ambient_dim) {
        report.ok = false;
        report.detail = "function and domain live in different spaces";
        return report;
    }
    if (!pl_covers(f, domain)) {
        report.ok = false;
        report.detail = "pieces do not cover the domain";
        return report;
    }
    const size_t n = f.pieces.size();
    std::vector<SemilinearSet> restricted(n);
    std::vector<SemilinearSet> closures(n);
    for (size_t i = 0; i < n; ++i) {
        restricted[i] =
            set_intersection(SemilinearSet::from_system(f.pieces[i].domain), domain);
        closures[i] = closure(restricted[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        if (is_empty(restricted[i])) continue;
        for (size_t j = i + 1; j < n; ++j) {
            if (is_empty(restricted[j])) continue;
            AffineForm diff = f.pieces[i].value - f.pieces[j].value;
            if (diff.is_zero()) continue;
            SemilinearSet seam =
                set_intersection(set_intersection(closures[i], closures[j]), domain);
            if (is_empty(seam)) continue;
            if (!is_empty(set_intersection(seam, nonzero_locus(diff)))) {
                report.ok = false;
                report.detail = "piece values disagree on a common closure point";
                return report;
            }
        }
    }
    return report;
}

SemilinearSet graph_set(const PLFunction& f, const SemilinearSet& base) {
    const int n = base.ambient_dim;
    std::vector<int> axis_map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axis_map[static_cast<size_t>(i)] = i;
    SemilinearSet out(n + 1);
    for (const auto& piece : f.pieces) {
        for (const auto& bp : base.pieces) {
            ConstraintSystem sys = embed_system(bp.intersect(piece.domain), n + 1, axis_map);
            AffineForm gap = AffineForm::variable(n + 1, n) - piece.value.insert_axis(n);
            sys.eq(gap);
            if (is_feasible(sys)) out.pieces.push_back(sys.simplified());
        }
    }
    return out;
}

SemilinearSet band_set(const PLFunction* lower, const PLFunction* upper,
                       const SemilinearSet& base) {
    const int n = base.ambient_dim;
    std::vector<int> axis_map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axis_map[static_cast<size_t>(i)] = i;
    const AffineForm y = AffineForm::variable(n + 1, n);

    std::vector<ConstraintSystem> carved;
    for (const auto& bp : base.pieces) carved.push_back(embed_system(bp, n + 1, axis_map));
    if (lower != nullptr) {
        std::vector<ConstraintSystem> next;
        for (const auto& sys : carved) {
            for (const auto& piece : lower->pieces) {
                ConstraintSystem refined =
                    sys.intersect(embed_system(piece.domain, n + 1, axis_map));
                refined.gt(y - piece.value.insert_axis(n));
                next.push_back(std::move(refined));
            }
        }
        carved = std::move(next);
    }
    if (upper != nullptr) {
        std::vector<ConstraintSystem> next;
        for (const auto& sys : carved) {
            for (const auto& piece : upper->pieces) {
                ConstraintSystem refined =
                    sys.intersect(embed_system(piece.domain, n + 1, axis_map));
                refined.lt(y - piece.value.insert_axis(n));
                next.push_back(std::move(refined));
            }
        }
        carved = std::move(next);
    }
    SemilinearSet out(n + 1);
    for (auto& sys : carved) {
        if (is_feasible(sys)) out.pieces.push_back(sys.simplified());
    }
    return out;
}

PwAffineMap PwAffineMap::identity(int n) {
    std::vector<AffineForm> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows.push_back(AffineForm::variable(n, i));
    return from_rows(std::move(rows));
}

PwAffineMap PwAffineMap::from_rows(std::vector<AffineForm> rows) {
    if (rows.empty()) throw DimensionMismatch("a piecewise map needs at least one row");
    PwAffineMap f;
    f.dom_dim = rows.front().dim();
    f.cod_dim = static_cast<int>(rows.size());
    for (const auto& row : rows) {
        if (row.dim() != f.dom_dim) throw DimensionMismatch("rows over different spaces");
    }
    f.pieces.push_back({ConstraintSystem(f.dom_dim), std::move(rows)});
    return f;
}

Point PwAffineMap::eval(const Point& point) const {
    for (const auto& piece : pieces) {
        if (!piece.domain.contains(point)) continue;
        Point out;
        out.reserve(piece.rows.size());
        for (const auto& row : piece.rows) out.push_back(row.eval(point));
        return out;
    }
    throw std::out_of_range("point outside every piece of a piecewise map");
}

AffineForm compose_affine(const AffineForm& outer, const std::vector<AffineForm>& inner) {
    if (outer.dim() != static_cast<int>(inner.size()))
        throw DimensionMismatch("affine composition with mismatched arity");
    const int k = inner.empty() ? 0 : inner.front().dim();
    AffineForm out(k);
    out.constant = outer.constant;
    for (size_t i = 0; i < inner.size(); ++i) {
        const Rational& c = outer.coeffs[i];
        if (c == 0) continue;
        out += inner[i] * c;
    }
    return out;
}

PwAffineMap PwAffineMap::compose(const PwAffineMap& inner) const {
    if (inner.cod_dim != dom_dim)
        throw DimensionMismatch("composing maps whose spaces do not line up");
    PwAffineMap out;
    out.dom_dim = inner.dom_dim;
    out.cod_dim = cod_dim;
    for (const auto& ip : inner.pieces) {
        for (const auto& op : pieces) {
            ConstraintSystem dom = ip.domain;
            for (const auto& constraint : op.domain.constraints) {
                dom.add(compose_affine(constraint.form, ip.rows), constraint.rel);
            }
            if (!is_feasible(dom)) continue;
            std::vector<AffineForm> rows;
            rows.reserve(op.rows.size());
            for (const auto& row : op.rows) rows.push_back(compose_affine(row, ip.rows));
            out.pieces.push_back({dom.simplified(), std::move(rows)});
        }
    }
    return out;
}

PwAffineMap PwAffineMap::restrict(const SemilinearSet& to) const {
    if (to.ambient_dim != dom_dim) throw DimensionMismatch("restricting to a foreign set");
    PwAffineMap out;
    out.dom_dim = dom_dim;
    out.cod_dim = cod_dim;
    for (const auto& piece : pieces) {
        for (const auto& sys : to.pieces) {
            ConstraintSystem dom = piece.domain.intersect(sys);
            if (!is_feasible(dom)) continue;
            out.pieces.push_back({dom.simplified(), piece.rows});
        }
    }
    return out;
}

PLFunction PwAffineMap::component(int j) const {
    PLFunction f(dom_dim);
    for (const auto& piece : pieces)
        f.pieces.push_back({piece.domain, piece.rows[static_cast<size_t>(j)]});
    return f;
}

SemilinearSet map_image(const PwAffineMap& f, const SemilinearSet& s) {
    if (s.ambient_dim != f.dom_dim) throw DimensionMismatch("image of a foreign set");
    const int n = f.dom_dim;
    const int m = f.cod_dim;
    std::vector<int> axis_map(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axis_map[static_cast<size_t>(i)] = i;
    SemilinearSet out(m);
    for (const auto& piece : f.pieces) {
        for (const auto& sp : s.pieces) {
            ConstraintSystem sys = embed_system(piece.domain.intersect(sp), n + m, axis_map);
            for (int j = 0; j < m; ++j) {
                AffineForm gap = AffineForm::variable(n + m, n + j);
                AffineForm row = piece.rows[static_cast<size_t>(j)];
                for (int extra = 0; extra < m; ++extra) row = row.insert_axis(n + extra);
                sys.eq(gap - row);
            }
            for (int round = 0; round < n; ++round) sys = fm_project(sys, 0);
            if (is_feasible(sys)) out.pieces.push_back(sys.simplified());
        }
    }
    return out;
}

SemilinearSet map_preimage(const PwAffineMap& f, const SemilinearSet& s) {
    if (s.ambient_dim != f.cod_dim) throw DimensionMismatch("preimage of a foreign set");
    SemilinearSet out(f.dom_dim);
    for (const auto& piece : f.pieces) {
        for (const auto& sp : s.pieces) {
            ConstraintSystem sys = piece.domain;
            for (const auto& constraint : sp.constraints) {
                sys.add(compose_affine(constraint.form, piece.rows), constraint.rel);
            }
            if (is_feasible(sys)) out.pieces.push_back(sys.simplified());
        }
    }
    return out;
}

PwAffineMap at_parameter(const PwAffineMap& f, const Rational& t) {
    if (f.dom_dim < 1) throw DimensionMismatch("no parameter coordinate to specialize");
    const AffineForm value = AffineForm::constant_form(f.dom_dim, t);
    PwAffineMap out;
    out.dom_dim = f.dom_dim - 1;
    out.cod_dim = f.cod_dim;
    for (const auto& piece : f.pieces) {
        ConstraintSystem dom = piece.domain.substitute_axis(0, value);
        if (!is_feasible(dom)) continue;
        std::vector<AffineForm> rows;
        rows.reserve(piece.rows.size());
        for (const auto& row : piece.rows) rows.push_back(row.substitute_axis(0, value));
        out.pieces.push_back({dom.simplified(), std::move(rows)});
    }
    return out;
}

} // namespace ominal
