#include "ominal/typespace.hpp"

#include "ominal/errors.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ominal {

namespace {

using Kind = NamedType1D::Kind;

int position_class(Kind k) {
    if (k == Kind::MinusInfinity) return 0;
    if (k == Kind::PlusInfinity) return 2;
    return 1;
}

int side(Kind k) {
    if (k == Kind::LeftOf) return -1;
    if (k == Kind::RightOf) return 1;
    return 0;
}

void require_line(const SemilinearSet& s, const char* who) {
    if (s.ambient_dim != 1) {
        throw DimensionMismatch(std::string(who) + " expects a one-dimensional ambient space");
    }
}

// Membership of the germ immediately left/right of a.
bool germ_in(const Breakline& b, const Rational& a, bool right_side) {
    const auto it = std::lower_bound(b.points.begin(), b.points.end(), a);
    const size_t idx = static_cast<size_t>(it - b.points.begin());
    if (it != b.points.end() && *it == a) return b.interval_in[right_side ? idx + 1 : idx];
    return b.interval_in[idx];
}

bool breakline_in(const Breakline& b, const NamedType1D& p) {
    switch (p.kind) {
        case Kind::MinusInfinity: return b.interval_in.front();
        case Kind::PlusInfinity: return b.interval_in.back();
        case Kind::LeftOf: return germ_in(b, p.value, false);
        case Kind::RightOf: return germ_in(b, p.value, true);
        case Kind::Realized: {
            const auto it = std::lower_bound(b.points.begin(), b.points.end(), p.value);
            const size_t idx = static_cast<size_t>(it - b.points.begin());
            if (it != b.points.end() && *it == p.value) return b.point_in[idx];
            return b.interval_in[idx];
        }
    }
    return false;
}

// Drop breakpoints that separate nothing, so the scans below see one entry
// per genuine constituent regardless of how the set was assembled.
Breakline canonical(const Breakline& b) {
    Breakline out;
    out.interval_in.push_back(b.interval_in[0]);
    for (size_t j = 0; j < b.points.size(); ++j) {
        const bool left = out.interval_in.back();
        const bool right = b.interval_in[j + 1];
        if (b.point_in[j] == left && left == right) continue;
        out.points.push_back(b.points[j]);
        out.point_in.push_back(b.point_in[j]);
        out.interval_in.push_back(right);
    }
    return out;
}

// First live entry of a nonempty breakline: the infimum's type.
NamedType1D leftmost_type(const Breakline& b) {
    if (b.interval_in[0]) return NamedType1D::minus_infinity();
    for (size_t j = 0; j < b.points.size(); ++j) {
        if (b.point_in[j]) return NamedType1D::realized(b.points[j]);
        if (b.interval_in[j + 1]) return NamedType1D::right_of(b.points[j]);
    }
    throw Error("leftmost_type called on an empty set");
}

// Witness that a remainder is nonempty, oriented toward suprema: the germ at
// the right end of the first interval constituent explains exhaustion
// failures (a cover of (0,1) by (0, 1-1/n) misses exactly left_of(1)).
NamedType1D escape_type(const Breakline& b) {
    const size_t n = b.points.size();
    for (size_t k = 0; k <= n; ++k) {
        if (!b.interval_in[k]) continue;
        if (k < n) return NamedType1D::left_of(b.points[k]);
        if (n > 0) return NamedType1D::right_of(b.points[n - 1]);
        return NamedType1D::plus_infinity();
    }
    for (size_t j = 0; j < n; ++j) {
        if (b.point_in[j]) return NamedType1D::realized(b.points[j]);
    }
    throw Error("escape_type called on an empty set");
}

struct Component {
    std::optional<Rational> lo, hi; // disengaged = unbounded end
    int owner = 0;
};

// Maximal runs of a closed set's breakline, tagged with their owner.
std::vector<Component> closed_components(const Breakline& b, int owner) {
    std::vector<Component> out;
    bool open_run = b.interval_in[0];
    Component cur{std::nullopt, std::nullopt, owner};
    for (size_t j = 0; j < b.points.size(); ++j) {
        const bool at_point = b.point_in[j];
        const bool after = b.interval_in[j + 1];
        if (!open_run && (at_point || after)) {
            cur = Component{b.points[j], std::nullopt, owner};
            open_run = true;
        }
        if (open_run && !after) {
            cur.hi = b.points[j];
            out.push_back(cur);
            open_run = false;
        }
    }
    if (open_run) out.push_back(cur);
    return out;
}

SemilinearSet open_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    ConstraintSystem sys(1);
    const AffineForm x = AffineForm::variable(1, 0);
    if (lo) sys.gt(x - AffineForm::constant_form(1, *lo));
    if (hi) sys.lt(x - AffineForm::constant_form(1, *hi));
    return SemilinearSet::from_system(sys);
}

} // namespace

bool type_less(const NamedType1D& a, const NamedType1D& b) {
    if (position_class(a.kind) != position_class(b.kind)) {
        return position_class(a.kind) < position_class(b.kind);
    }
    if (position_class(a.kind) != 1) return false;
    if (a.value != b.value) return a.value < b.value;
    return side(a.kind) < side(b.kind);
}

std::string to_string(const NamedType1D& t) {
    switch (t.kind) {
        case Kind::MinusInfinity: return "minus_infinity";
        case Kind::PlusInfinity: return "plus_infinity";
        case Kind::LeftOf: return "left_of(" + to_string(t.value) + ")";
        case Kind::RightOf: return "right_of(" + to_string(t.value) + ")";
        case Kind::Realized: return "realized(" + to_string(t.value) + ")";
    }
    return {};
}

bool type_in(const NamedType1D& p, const SemilinearSet& s) {
    require_line(s, "type_in");
    if (p.kind == Kind::Realized) return s.contains({p.value});
    return breakline_in(normalize_1d(s), p);
}

TypeSpace1D enumerate_named_types(const SemilinearSet& x) {
    require_line(x, "enumerate_named_types");
    const Breakline b = normalize_1d(x);
    const size_t n = b.points.size();

    // Anchors: every breakpoint, plus one interior witness per maximal run of
    // live entries, taken from the run's first interval constituent.
    std::vector<Rational> anchors = b.points;
    bool in_run = false;
    bool witnessed = false;
    auto entry = [&](bool live, std::optional<size_t> interval) {
        if (!live) {
            in_run = false;
            witnessed = false;
            return;
        }
        in_run = true;
        if (!interval || witnessed) return;
        const size_t k = *interval;
        Rational w;
        if (n == 0) {
            w = 0;
        } else if (k == 0) {
            w = b.points.front() - 1;
        } else if (k == n) {
            w = b.points.back() + 1;
        } else {
            w = (b.points[k - 1] + b.points[k]) / 2;
        }
        anchors.push_back(w);
        witnessed = true;
    };
    entry(b.interval_in[0], 0);
    for (size_t j = 0; j < n; ++j) {
        entry(b.point_in[j], std::nullopt);
        entry(b.interval_in[j + 1], j + 1);
    }

    TypeSpace1D out;
    out.carrier = x;
    for (const auto& a : anchors) {
        if (breakline_in(b, NamedType1D::realized(a))) out.types.push_back(NamedType1D::realized(a));
        if (germ_in(b, a, false)) out.types.push_back(NamedType1D::left_of(a));
        if (germ_in(b, a, true)) out.types.push_back(NamedType1D::right_of(a));
    }
    if (b.interval_in.front()) out.types.push_back(NamedType1D::minus_infinity());
    if (b.interval_in.back()) out.types.push_back(NamedType1D::plus_infinity());
    std::sort(out.types.begin(), out.types.end(), type_less);
    out.types.erase(std::unique(out.types.begin(), out.types.end()), out.types.end());
    return out;
}

bool specializes(const NamedType1D& p, const NamedType1D& q, const SemilinearSet& x) {
    require_line(x, "specializes");
    if (!type_in(p, x) || !type_in(q, x)) return false;
    if (p == q) return true;
    // Only realized points attract strictly: the basic opens around a germ or
    // an unbounded end eventually shed every other named type, while every
    // open interval around a realized point keeps that point's two germs.
    return q.kind == Kind::Realized && side(p.kind) != 0 && p.value == q.value;
}

SubcoverResult finite_subcover(const SemilinearSet& x, const std::vector<SemilinearSet>& cover) {
    require_line(x, "finite_subcover");
    SemilinearSet all = SemilinearSet::empty_set(1);
    for (const auto& m : cover) {
        require_line(m, "finite_subcover");
        all = set_union(all, m);
    }

    const SemilinearSet missed = set_difference(x, all);
    if (!is_empty(missed)) {
        SubcoverResult out;
        out.missing = escape_type(canonical(normalize_1d(missed)));
        return out;
    }

    // Sweep left to right: repeatedly take a member containing the leftmost
    // uncovered type, preferring the one that pushes the frontier furthest.
    SubcoverResult out;
    out.covered = true;
    SemilinearSet left = x;
    while (!is_empty(left)) {
        const NamedType1D frontier = leftmost_type(canonical(normalize_1d(left)));
        int best = -1;
        std::optional<NamedType1D> best_next;
        std::optional<SemilinearSet> best_rest;
        for (size_t i = 0; i < cover.size(); ++i) {
            if (!type_in(frontier, cover[i])) continue;
            SemilinearSet rest = set_difference(left, cover[i]);
            if (is_empty(rest)) {
                best = static_cast<int>(i);
                best_rest = std::move(rest);
                break;
            }
            NamedType1D next = leftmost_type(canonical(normalize_1d(rest)));
            if (best < 0 || type_less(*best_next, next)) {
                best = static_cast<int>(i);
                best_next = next;
                best_rest = std::move(rest);
            }
        }
        if (best < 0) throw Error("finite_subcover: no member contains the frontier type");
        out.chosen.push_back(best);
        left = std::move(*best_rest);
    }
    std::sort(out.chosen.begin(), out.chosen.end());

    // One discard pass makes the chosen family inclusion-minimal.
    for (size_t k = 0; k < out.chosen.size();) {
        SemilinearSet rest = SemilinearSet::empty_set(1);
        for (size_t j = 0; j < out.chosen.size(); ++j) {
            if (j != k) rest = set_union(rest, cover[static_cast<size_t>(out.chosen[j])]);
        }
        if (is_subset(x, rest)) {
            out.chosen.erase(out.chosen.begin() + static_cast<long>(k));
        } else {
            ++k;
        }
    }
    return out;
}

std::pair<SemilinearSet, SemilinearSet> separate_closed(const SemilinearSet& a,
                                                        const SemilinearSet& b) {
    require_line(a, "separate_closed");
    require_line(b, "separate_closed");
    if (!is_closed(a) || !is_closed(b)) throw NotClosed("separate_closed needs closed inputs");
    if (!is_empty(set_intersection(a, b))) {
        throw NotDisjoint("separate_closed needs disjoint inputs");
    }

    std::vector<Component> comps = closed_components(canonical(normalize_1d(a)), 0);
    for (const auto& c : closed_components(canonical(normalize_1d(b)), 1)) comps.push_back(c);
    std::sort(comps.begin(), comps.end(), [](const Component& l, const Component& r) {
        if (!l.lo) return static_cast<bool>(r.lo);
        if (!r.lo) return false;
        return *l.lo < *r.lo;
    });

    // A cut at the midpoint of every gap between components of different
    // owners; disjointness guarantees both gap ends are finite.
    const size_t m = comps.size();
    std::vector<std::optional<Rational>> cut(m > 0 ? m - 1 : 0);
    for (size_t i = 0; i + 1 < m; ++i) {
        if (comps[i].owner == comps[i + 1].owner) continue;
        cut[i] = (*comps[i].hi + *comps[i + 1].lo) / 2;
    }

    SemilinearSet u = SemilinearSet::empty_set(1);
    SemilinearSet v = SemilinearSet::empty_set(1);
    for (size_t i = 0; i < m; ++i) {
        std::optional<Rational> lo, hi;
        for (size_t j = i; j-- > 0;) {
            if (cut[j]) {
                lo = cut[j];
                break;
            }
        }
        for (size_t j = i; j < cut.size(); ++j) {
            if (cut[j]) {
                hi = cut[j];
                break;
            }
        }
        SemilinearSet& target = comps[i].owner == 0 ? u : v;
        target = set_union(target, open_between(lo, hi));
    }
    return {u, v};
}

} // namespace ominal
