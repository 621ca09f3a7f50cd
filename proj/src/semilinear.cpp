#include "ominal/semilinear.hpp"

#include "ominal/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>

namespace ominal {

namespace {

std::tuple<const std::vector<Rational>&, const Rational&, Rel> constraint_key(
    const LinearConstraint& c) {
    return {c.form.coeffs, c.form.constant, c.rel};
}

bool constraint_less(const LinearConstraint& a, const LinearConstraint& b) {
    return constraint_key(a) < constraint_key(b);
}

ConstraintSystem canonical_piece(const ConstraintSystem& piece) {
    ConstraintSystem out = piece.simplified();
    std::sort(out.constraints.begin(), out.constraints.end(), constraint_less);
    return out;
}

void push_piece(SemilinearSet& set, const ConstraintSystem& piece) {
    if (!is_feasible(piece)) return;
    ConstraintSystem canon = canonical_piece(piece);
    for (const auto& existing : set.pieces) {
        if (existing.constraints == canon.constraints) return;
    }
    set.pieces.push_back(std::move(canon));
}

void require_same_dim(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.ambient_dim != b.ambient_dim) {
        throw DimensionMismatch("ambient dimensions differ: " + std::to_string(a.ambient_dim) +
                                " vs " + std::to_string(b.ambient_dim));
    }
}

// Shared vocabulary of normalized constraint forms. Every constraint of a
// registered piece becomes (form index, orientation flip, relation); a full
// sign assignment to the forms then decides every registered constraint.
struct FormTable {
    int dim;
    std::vector<AffineForm> forms;
    std::map<std::pair<std::vector<Rational>, Rational>, size_t> index;

    struct Atom {
        size_t form_index;
        int flip;
        Rel rel;
    };
    using PieceAtoms = std::vector<Atom>;

    explicit FormTable(int dim_) : dim(dim_) {}

    size_t add_form(const AffineForm& raw, int* flip_out = nullptr) {
        int flip = 1;
        AffineForm norm = raw.normalized(&flip);
        if (flip_out) *flip_out = flip;
        auto key = std::make_pair(norm.coeffs, norm.constant);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        const size_t idx = forms.size();
        index.emplace(std::move(key), idx);
        forms.push_back(std::move(norm));
        return idx;
    }

    // Pieces must be feasible and simplified (no constant constraints).
    PieceAtoms register_piece(const ConstraintSystem& piece) {
        PieceAtoms atoms;
        for (const auto& c : piece.constraints) {
            assert(!c.form.is_constant());
            int flip = 1;
            const size_t idx = add_form(c.form, &flip);
            atoms.push_back({idx, flip, c.rel});
        }
        return atoms;
    }
};

bool atom_holds(const FormTable::Atom& atom, const std::vector<int>& signs) {
    const int effective = atom.flip * signs[atom.form_index];
    switch (atom.rel) {
        case Rel::LT: return effective == -1;
        case Rel::LE: return effective <= 0;
        case Rel::EQ: return effective == 0;
    }
    return false;
}

bool atoms_hold(const FormTable::PieceAtoms& atoms, const std::vector<int>& signs) {
    return std::all_of(atoms.begin(), atoms.end(),
                       [&](const FormTable::Atom& a) { return atom_holds(a, signs); });
}

bool any_piece_holds(const std::vector<FormTable::PieceAtoms>& pieces,
                     const std::vector<int>& signs) {
    return std::any_of(pieces.begin(), pieces.end(),
                       [&](const FormTable::PieceAtoms& p) { return atoms_hold(p, signs); });
}

std::vector<ConstraintSystem> usable_pieces(const SemilinearSet& x) {
    std::vector<ConstraintSystem> out;
    for (const auto& piece : x.pieces) {
        ConstraintSystem simple = piece.simplified();
        if (is_feasible(simple)) out.push_back(std::move(simple));
    }
    return out;
}

} // namespace

SemilinearSet SemilinearSet::empty_set(int dim) { return SemilinearSet(dim); }

SemilinearSet SemilinearSet::whole_space(int dim) {
    SemilinearSet out(dim);
    out.pieces.emplace_back(dim);
    return out;
}

SemilinearSet SemilinearSet::from_system(const ConstraintSystem& system) {
    SemilinearSet out(system.ambient_dim);
    push_piece(out, system);
    return out;
}

SemilinearSet SemilinearSet::single_point(const Point& point) {
    const int n = static_cast<int>(point.size());
    ConstraintSystem sys(n);
    for (int i = 0; i < n; ++i) {
        sys.eq(lin(n, {{i, Rational(1)}}, -point[static_cast<size_t>(i)]));
    }
    return from_system(sys);
}

bool SemilinearSet::contains(const Point& point) const {
    return std::any_of(pieces.begin(), pieces.end(),
                       [&](const ConstraintSystem& p) { return p.contains(point); });
}

SemilinearSet set_union(const SemilinearSet& a, const SemilinearSet& b) {
    require_same_dim(a, b);
    SemilinearSet out(a.ambient_dim);
    for (const auto& p : a.pieces) push_piece(out, p);
    for (const auto& p : b.pieces) push_piece(out, p);
    return out;
}

SemilinearSet set_intersection(const SemilinearSet& a, const SemilinearSet& b) {
    require_same_dim(a, b);
    SemilinearSet out(a.ambient_dim);
    for (const auto& pa : a.pieces) {
        for (const auto& pb : b.pieces) {
            push_piece(out, pa.intersect(pb));
        }
    }
    return out;
}

namespace {

// Walks sign assignments to the combined form vocabulary of a and b, but only
// as deep as needed to decide membership in both sets; each decided branch is
// one output piece. This keeps complements and differences close to the size
// of the decision structure rather than the full arrangement.
// keep(in_a, in_b) selects which decided branches to emit; stop(in_a, in_b)
// aborts the walk early (used by the decision procedures).
SemilinearSet classify_cells(const SemilinearSet& a, const SemilinearSet& b,
                             const std::function<bool(bool, bool)>& keep,
                             const std::function<bool(bool, bool)>& stop, bool* aborted) {
    FormTable table(a.ambient_dim);
    std::vector<FormTable::PieceAtoms> a_atoms, b_atoms;
    for (const auto& piece : usable_pieces(a)) a_atoms.push_back(table.register_piece(piece));
    for (const auto& piece : usable_pieces(b)) b_atoms.push_back(table.register_piece(piece));
    SemilinearSet out(a.ambient_dim);
    if (aborted) *aborted = false;

    const size_t form_count = table.forms.size();
    std::vector<int> signs(form_count, 2); // 2 = unassigned

    // Membership is decided once some piece holds on every assignment
    // extending the current partial one, or every piece already fails.
    auto decide = [&](const std::vector<FormTable::PieceAtoms>& pieces, bool* value) {
        bool all_violated = true;
        for (const auto& piece : pieces) {
            bool violated = false;
            bool complete = true;
            for (const auto& atom : piece) {
                if (signs[atom.form_index] == 2) {
                    complete = false;
                } else if (!atom_holds(atom, signs)) {
                    violated = true;
                    break;
                }
            }
            if (violated) continue;
            all_violated = false;
            if (complete) {
                *value = true;
                return true;
            }
        }
        if (all_violated) {
            *value = false;
            return true;
        }
        return false;
    };

    // Branch on the unsigned form most shared among the pieces that are still
    // live in an undecided set; only decision-relevant forms get signs, so
    // each decided branch is as coarse as possible.
    std::vector<int> score(form_count);
    auto choose_form = [&](bool need_a, bool need_b) {
        std::fill(score.begin(), score.end(), 0);
        auto tally = [&](const std::vector<FormTable::PieceAtoms>& pieces) {
            for (const auto& piece : pieces) {
                bool violated = false;
                for (const auto& atom : piece) {
                    if (signs[atom.form_index] != 2 && !atom_holds(atom, signs)) {
                        violated = true;
                        break;
                    }
                }
                if (violated) continue;
                for (const auto& atom : piece) {
                    if (signs[atom.form_index] == 2) ++score[atom.form_index];
                }
            }
        };
        if (need_a) tally(a_atoms);
        if (need_b) tally(b_atoms);
        size_t best = form_count;
        for (size_t i = 0; i < form_count; ++i) {
            if (score[i] > 0 && (best == form_count || score[i] > score[best])) best = i;
        }
        return best;
    };

    ConstraintSystem partial(a.ambient_dim);
    std::vector<Point> witnesses;
    if (auto w = sample_point(partial)) witnesses.push_back(std::move(*w));
    auto feasible = [&]() {
        for (auto it = witnesses.rbegin(); it != witnesses.rend(); ++it) {
            if (partial.contains(*it)) return true;
        }
        if (!is_feasible(partial)) return false;
        auto w = sample_point(partial);
        if (witnesses.size() >= 32) witnesses.erase(witnesses.begin());
        witnesses.push_back(std::move(*w));
        return true;
    };

    auto recurse = [&](auto&& self) -> bool {
        bool in_a = false, in_b = false;
        const bool a_decided = decide(a_atoms, &in_a);
        const bool b_decided = decide(b_atoms, &in_b);
        if (a_decided && b_decided) {
            if (stop && stop(in_a, in_b)) {
                if (aborted) *aborted = true;
                return false;
            }
            // Branches are disjoint and witnessed feasible already.
            if (keep && keep(in_a, in_b)) out.pieces.push_back(canonical_piece(partial));
            return true;
        }
        const size_t target = choose_form(!a_decided, !b_decided);
        assert(target < form_count);
        for (int sign : {-1, 0, 1}) {
            signs[target] = sign;
            const size_t before = partial.constraints.size();
            if (sign == 0) {
                partial.add(table.forms[target], Rel::EQ);
            } else if (sign == -1) {
                partial.add(table.forms[target], Rel::LT);
            } else {
                partial.add(-table.forms[target], Rel::LT);
            }
            const bool keep_going = !feasible() || self(self);
            partial.constraints.resize(before);
            signs[target] = 2;
            if (!keep_going) return false;
        }
        return true;
    };
    recurse(recurse);
    return out;
}

} // namespace

SemilinearSet set_complement(const SemilinearSet& a) {
    return classify_cells(a, SemilinearSet::empty_set(a.ambient_dim),
                          [](bool in_a, bool) { return !in_a; }, nullptr, nullptr);
}

SemilinearSet set_difference(const SemilinearSet& a, const SemilinearSet& b) {
    require_same_dim(a, b);
    return classify_cells(a, b, [](bool in_a, bool in_b) { return in_a && !in_b; }, nullptr,
                          nullptr);
}

SemilinearSet boolean_op(BoolOp op, const SemilinearSet& a, const SemilinearSet* b) {
    if (op == BoolOp::Complement) return set_complement(a);
    if (!b) throw DimensionMismatch("binary boolean operation requires two operands");
    switch (op) {
        case BoolOp::Union: return set_union(a, *b);
        case BoolOp::Intersection: return set_intersection(a, *b);
        case BoolOp::Difference: return set_difference(a, *b);
        case BoolOp::Complement: break;
    }
    return a;
}

bool is_empty(const SemilinearSet& x) {
    return std::none_of(x.pieces.begin(), x.pieces.end(),
                        [](const ConstraintSystem& p) { return is_feasible(p); });
}

bool is_subset(const SemilinearSet& a, const SemilinearSet& b) {
    require_same_dim(a, b);
    bool aborted = false;
    classify_cells(a, b, nullptr, [](bool in_a, bool in_b) { return in_a && !in_b; }, &aborted);
    return !aborted;
}

bool sets_equal(const SemilinearSet& a, const SemilinearSet& b) {
    require_same_dim(a, b);
    bool aborted = false;
    classify_cells(a, b, nullptr, [](bool in_a, bool in_b) { return in_a != in_b; }, &aborted);
    return !aborted;
}

std::optional<Point> sample_point(const SemilinearSet& x) {
    for (const auto& piece : x.pieces) {
        if (auto point = sample_point(piece)) return point;
    }
    return std::nullopt;
}

SemilinearSet closure(const SemilinearSet& x) {
    // A feasible conjunction of linear constraints closes by weakening its
    // strict constraints: any point of the weakened system is the limit of
    // the segment toward a witness of the original (all stricts hold strictly
    // at the witness, so interior segment points satisfy every constraint).
    SemilinearSet out(x.ambient_dim);
    for (const auto& piece : x.pieces) {
        if (!is_feasible(piece)) continue;
        ConstraintSystem closed(x.ambient_dim);
        for (const auto& c : piece.constraints) {
            closed.constraints.push_back({c.form, c.rel == Rel::LT ? Rel::LE : c.rel});
        }
        push_piece(out, closed);
    }
    return out;
}

SemilinearSet interior(const SemilinearSet& x) {
    return set_complement(closure(set_complement(x)));
}

SemilinearSet boundary(const SemilinearSet& x) { return set_difference(closure(x), x); }

bool is_bounded(const SemilinearSet& x) {
    for (const auto& piece : x.pieces) {
        if (!is_feasible(piece)) continue;
        for (int axis = 0; axis < x.ambient_dim; ++axis) {
            if (!axis_upper_bound(piece, axis) || !axis_lower_bound(piece, axis)) return false;
        }
    }
    return true;
}

bool is_closed(const SemilinearSet& x) { return is_subset(closure(x), x); }

bool is_definably_compact(const SemilinearSet& x) { return is_closed(x) && is_bounded(x); }

int dimension(const SemilinearSet& x) {
    // Dimension of a feasible piece = ambient dim minus the rank of its
    // affine hull equations: declared equalities plus weak constraints that
    // are implicitly tight (their strict version is infeasible alongside the
    // rest). Strict constraints are never tight on a feasible piece.
    int best = -1;
    for (const auto& piece : x.pieces) {
        if (!is_feasible(piece)) continue;
        Matrix hull;
        for (size_t i = 0; i < piece.constraints.size(); ++i) {
            const auto& c = piece.constraints[i];
            if (c.rel == Rel::EQ) {
                hull.push_back(c.form.coeffs);
                continue;
            }
            if (c.rel != Rel::LE) continue;
            ConstraintSystem probe = piece;
            probe.constraints[i].rel = Rel::LT;
            if (!is_feasible(probe)) hull.push_back(c.form.coeffs);
        }
        best = std::max(best, x.ambient_dim - matrix_rank(std::move(hull)));
    }
    return best;
}

std::vector<AffineForm> constraint_forms(const SemilinearSet& x) {
    std::vector<AffineForm> out;
    for (const auto& piece : x.pieces) {
        for (const auto& c : piece.constraints) out.push_back(c.form);
    }
    return out;
}

SemilinearSet fm_project_set(const SemilinearSet& x, int axis) {
    SemilinearSet out(x.ambient_dim - 1);
    for (const auto& piece : x.pieces) push_piece(out, fm_project(piece, axis));
    return out;
}

ConstraintSystem embed_system(const ConstraintSystem& system, int new_dim,
                              const std::vector<int>& axis_map) {
    assert(static_cast<int>(axis_map.size()) == system.ambient_dim);
    ConstraintSystem out(new_dim);
    for (const auto& c : system.constraints) {
        AffineForm f(new_dim);
        f.constant = c.form.constant;
        for (size_t i = 0; i < c.form.coeffs.size(); ++i) {
            assert(axis_map[i] >= 0 && axis_map[i] < new_dim);
            f.coeffs[static_cast<size_t>(axis_map[i])] = c.form.coeffs[i];
        }
        out.constraints.push_back({std::move(f), c.rel});
    }
    return out;
}

SemilinearSet embed(const SemilinearSet& x, int new_dim, const std::vector<int>& axis_map) {
    SemilinearSet out(new_dim);
    for (const auto& piece : x.pieces) {
        out.pieces.push_back(embed_system(piece, new_dim, axis_map));
    }
    return out;
}

SemilinearSet substitute_axis_value(const SemilinearSet& x, int axis, const Rational& value) {
    SemilinearSet out(x.ambient_dim - 1);
    const AffineForm replacement = AffineForm::constant_form(x.ambient_dim, value);
    for (const auto& piece : x.pieces) {
        push_piece(out, piece.substitute_axis(axis, replacement));
    }
    return out;
}

SemilinearSet slice(const DefinableFamily& family, const Rational& t) {
    if (t <= 0) {
        throw NonPositiveParameter("family parameter must be positive, got " + to_string(t));
    }
    return substitute_axis_value(family.total_space, family.parameter_axis, t);
}

Breakline normalize_1d(const SemilinearSet& x) {
    if (x.ambient_dim != 1) {
        throw DimensionMismatch("normalize_1d expects a one-dimensional ambient space");
    }
    Breakline out;
    for (const auto& piece : x.pieces) {
        for (const auto& c : piece.constraints) {
            const Rational& a = c.form.coeffs[0];
            if (a == 0) continue;
            const Rational root = -c.form.constant / a;
            if (std::find(out.points.begin(), out.points.end(), root) == out.points.end()) {
                out.points.push_back(root);
            }
        }
    }
    std::sort(out.points.begin(), out.points.end());
    out.point_in.resize(out.points.size());
    out.interval_in.resize(out.points.size() + 1);
    for (size_t i = 0; i < out.points.size(); ++i) {
        out.point_in[i] = x.contains({out.points[i]});
    }
    if (out.points.empty()) {
        out.interval_in[0] = x.contains({Rational(0)});
        return out;
    }
    out.interval_in[0] = x.contains({out.points.front() - 1});
    for (size_t i = 0; i + 1 < out.points.size(); ++i) {
        out.interval_in[i + 1] = x.contains({(out.points[i] + out.points[i + 1]) / 2});
    }
    out.interval_in[out.points.size()] = x.contains({out.points.back() + 1});
    return out;
}

SemilinearSet breakline_to_set(const Breakline& b) {
    SemilinearSet out(1);
    const AffineForm x = AffineForm::variable(1, 0);
    const size_t m = b.points.size();
    for (size_t i = 0; i < m; ++i) {
        if (!b.point_in[i]) continue;
        ConstraintSystem sys(1);
        sys.eq(x - AffineForm::constant_form(1, b.points[i]));
        push_piece(out, sys);
    }
    for (size_t i = 0; i <= m; ++i) {
        if (!b.interval_in[i]) continue;
        ConstraintSystem sys(1);
        if (i > 0) sys.gt(x - AffineForm::constant_form(1, b.points[i - 1]));
        if (i < m) sys.lt(x - AffineForm::constant_form(1, b.points[i]));
        push_piece(out, sys);
    }
    return out;
}

} // namespace ominal
