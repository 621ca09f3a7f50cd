#include "ominal/fourier_motzkin.hpp"

#include "ominal/errors.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

namespace ominal {

namespace {

bool constant_constraint_holds(const LinearConstraint& c) {
    const Rational& k = c.form.constant;
    switch (c.rel) {
        case Rel::LT: return k < 0;
        case Rel::LE: return k <= 0;
        case Rel::EQ: return k == 0;
    }
    return false;
}

bool constraint_less(const LinearConstraint& a, const LinearConstraint& b) {
    return std::tie(a.rel, a.form.coeffs, a.form.constant) <
           std::tie(b.rel, b.form.coeffs, b.form.constant);
}

// Working representation for elimination chains: tautologies dropped,
// duplicates merged, identically false constraints collapse to `falsum`.
struct RawSystem {
    int dim = 0;
    std::vector<LinearConstraint> constraints;
    bool falsum = false;

    void push(AffineForm form, Rel rel) {
        if (falsum) return;
        if (form.is_constant()) {
            if (!constant_constraint_holds({form, rel})) falsum = true;
            return;
        }
        constraints.push_back({std::move(form), rel});
    }

    void dedupe() {
        std::sort(constraints.begin(), constraints.end(), constraint_less);
        constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());
    }
};

RawSystem raw_from(const ConstraintSystem& system) {
    RawSystem out;
    out.dim = system.ambient_dim;
    for (const auto& c : system.constraints) {
        out.push(c.form, c.rel);
        if (out.falsum) break;
    }
    return out;
}

// One exact elimination step; result has dim-1 variables.
RawSystem project_step(const RawSystem& in, int axis) {
    RawSystem out;
    out.dim = in.dim - 1;
    if (in.falsum) {
        out.falsum = true;
        return out;
    }

    for (size_t i = 0; i < in.constraints.size(); ++i) {
        const auto& c = in.constraints[i];
        if (c.rel != Rel::EQ) continue;
        const Rational a = c.form.coeffs[static_cast<size_t>(axis)];
        if (a == 0) continue;
        // form = a*x_axis + rest = 0  =>  x_axis = -rest / a.
        AffineForm replacement = c.form;
        replacement.coeffs[static_cast<size_t>(axis)] = 0;
        replacement *= Rational(-1) / a;
        for (size_t j = 0; j < in.constraints.size(); ++j) {
            if (j == i) continue;
            out.push(in.constraints[j].form.substitute_axis(axis, replacement),
                     in.constraints[j].rel);
            if (out.falsum) return out;
        }
        out.dedupe();
        return out;
    }

    std::vector<const LinearConstraint*> lowers, uppers;
    for (const auto& c : in.constraints) {
        const Rational& a = c.form.coeffs[static_cast<size_t>(axis)];
        if (a == 0) {
            out.push(c.form.drop_axis(axis), c.rel);
            if (out.falsum) return out;
        } else if (a > 0) {
            uppers.push_back(&c); // a*x + r <= 0 bounds x above
        } else {
            lowers.push_back(&c); // bounds x below
        }
    }
    for (const auto* lo : lowers) {
        const Rational al = lo->form.coeffs[static_cast<size_t>(axis)];
        for (const auto* up : uppers) {
            const Rational au = up->form.coeffs[static_cast<size_t>(axis)];
            // Positive combination (-al)*up + au*lo cancels the axis.
            AffineForm combined = (-al) * up->form + au * lo->form;
            const Rel rel = (lo->rel == Rel::LT || up->rel == Rel::LT) ? Rel::LT : Rel::LE;
            out.push(combined.drop_axis(axis), rel);
            if (out.falsum) return out;
        }
    }
    out.dedupe();
    return out;
}

// Cheapest-looking axis first keeps intermediate systems small.
int pick_axis(const RawSystem& sys) {
    int best_axis = 0;
    long best_cost = -1;
    for (int axis = 0; axis < sys.dim; ++axis) {
        long lowers = 0, uppers = 0;
        bool has_eq = false;
        for (const auto& c : sys.constraints) {
            const Rational& a = c.form.coeffs[static_cast<size_t>(axis)];
            if (a == 0) continue;
            if (c.rel == Rel::EQ) {
                has_eq = true;
                break;
            }
            (a > 0 ? uppers : lowers) += 1;
        }
        if (has_eq) return axis;
        const long cost = lowers * uppers;
        if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            best_axis = axis;
        }
    }
    return best_axis;
}

} // namespace

ConstraintSystem fm_project(const ConstraintSystem& system, int axis) {
    assert(axis >= 0 && axis < system.ambient_dim);
    RawSystem projected = project_step(raw_from(system), axis);
    ConstraintSystem out(system.ambient_dim - 1);
    if (projected.falsum) {
        out.add(AffineForm::constant_form(out.ambient_dim, Rational(1)), Rel::LE);
        return out;
    }
    out.constraints = std::move(projected.constraints);
    return out.simplified();
}

bool is_feasible(const ConstraintSystem& system) {
    RawSystem current = raw_from(system);
    while (!current.falsum && current.dim > 0 && !current.constraints.empty()) {
        current = project_step(current, pick_axis(current));
    }
    return !current.falsum;
}

namespace {

// Bounds for the last coordinate, given values for all other coordinates.
struct FiberBounds {
    std::optional<AxisBound> lower, upper;
    std::optional<Rational> forced; // from an equality
};

FiberBounds fiber_bounds(const std::vector<LinearConstraint>& constraints, int dim,
                         const Point& prefix) {
    const int axis = dim - 1;
    FiberBounds out;
    Point probe = prefix;
    probe.emplace_back(0);
    for (const auto& c : constraints) {
        const Rational a = c.form.coeffs[static_cast<size_t>(axis)];
        if (a == 0) continue;
        probe.back() = 0;
        const Rational rest = c.form.eval(probe); // value with x_axis = 0
        const Rational bound = -rest / a;
        if (c.rel == Rel::EQ) {
            out.forced = bound;
            continue;
        }
        const bool attained = c.rel == Rel::LE;
        if (a > 0) {
            if (!out.upper || bound < out.upper->value ||
                (bound == out.upper->value && !attained)) {
                out.upper = AxisBound{bound, attained};
            }
        } else {
            if (!out.lower || bound > out.lower->value ||
                (bound == out.lower->value && !attained)) {
                out.lower = AxisBound{bound, attained};
            }
        }
    }
    return out;
}

} // namespace

std::optional<Point> sample_point(const ConstraintSystem& system) {
    // One elimination chain (always dropping the last coordinate), then
    // back-substitution level by level.
    std::vector<RawSystem> chain;
    chain.push_back(raw_from(system));
    while (chain.back().dim > 0) {
        if (chain.back().falsum) return std::nullopt;
        chain.push_back(project_step(chain.back(), chain.back().dim - 1));
    }
    if (chain.back().falsum) return std::nullopt;

    Point point;
    for (size_t level = chain.size(); level-- > 1;) {
        // chain[level-1] has dim = chain.size()-level ... reconstruct upward.
        const RawSystem& sys = chain[level - 1];
        const FiberBounds bounds = fiber_bounds(sys.constraints, sys.dim, point);
        if (bounds.forced) {
            point.push_back(*bounds.forced);
        } else if (bounds.lower && bounds.upper) {
            if (bounds.lower->value == bounds.upper->value) {
                point.push_back(bounds.lower->value);
            } else {
                point.push_back((bounds.lower->value + bounds.upper->value) / 2);
            }
        } else if (bounds.lower) {
            point.push_back(bounds.lower->attained ? bounds.lower->value
                                                   : bounds.lower->value + 1);
        } else if (bounds.upper) {
            point.push_back(bounds.upper->attained ? bounds.upper->value
                                                   : bounds.upper->value - 1);
        } else {
            point.emplace_back(0);
        }
    }
    assert(system.contains(point));
    return point;
}

namespace {

// Projects onto `axis` by eliminating every other coordinate.
RawSystem project_to_axis(const ConstraintSystem& system, int axis) {
    RawSystem current = raw_from(system);
    int current_axis = axis;
    while (!current.falsum && current.dim > 1) {
        const int victim = current.dim - 1 == current_axis ? 0 : current.dim - 1;
        current = project_step(current, victim);
        if (victim < current_axis) --current_axis;
    }
    return current;
}

std::optional<AxisBound> one_dim_upper(const RawSystem& line) {
    // line is 1-dimensional and feasible.
    std::optional<AxisBound> best;
    for (const auto& c : line.constraints) {
        const Rational& a = c.form.coeffs[0];
        if (a == 0) continue;
        const Rational bound = -c.form.constant / a;
        if (c.rel == Rel::EQ) {
            AxisBound eq{bound, true};
            if (!best || eq.value < best->value) best = eq;
            continue;
        }
        if (a < 0) continue;
        const bool attained = c.rel == Rel::LE;
        if (!best || bound < best->value || (bound == best->value && !attained)) {
            best = AxisBound{bound, attained};
        }
    }
    return best;
}

} // namespace

std::optional<AxisBound> axis_upper_bound(const ConstraintSystem& system, int axis) {
    return one_dim_upper(project_to_axis(system, axis));
}

std::optional<AxisBound> axis_lower_bound(const ConstraintSystem& system, int axis) {
    RawSystem line = project_to_axis(system, axis);
    for (auto& c : line.constraints) c.form.coeffs[0] *= -1; // reflect
    auto bound = one_dim_upper(line);
    if (bound) bound->value = -bound->value;
    return bound;
}

bool system_is_bounded(const ConstraintSystem& system) {
    if (!is_feasible(system)) return true;
    for (int axis = 0; axis < system.ambient_dim; ++axis) {
        RawSystem line = project_to_axis(system, axis);
        std::optional<AxisBound> upper = one_dim_upper(line);
        for (auto& c : line.constraints) c.form.coeffs[0] *= -1;
        std::optional<AxisBound> lower = one_dim_upper(line);
        if (!upper || !lower) return false;
    }
    return true;
}

int matrix_rank(Matrix m) {
    if (m.empty()) return 0;
    const size_t cols = m[0].size();
    int rank = 0;
    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < m.size(); ++col) {
        size_t found = pivot_row;
        while (found < m.size() && m[found][col] == 0) ++found;
        if (found == m.size()) continue;
        std::swap(m[pivot_row], m[found]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == pivot_row || m[r][col] == 0) continue;
            const Rational factor = m[r][col] / m[pivot_row][col];
            for (size_t c = col; c < cols; ++c) m[r][c] -= factor * m[pivot_row][c];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

std::optional<Point> solve_linear(Matrix a, Point b) {
    assert(a.size() == b.size());
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
        size_t found = pivot_row;
        while (found < rows && a[found][col] == 0) ++found;
        if (found == rows) continue;
        std::swap(a[pivot_row], a[found]);
        std::swap(b[pivot_row], b[found]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || a[r][col] == 0) continue;
            const Rational factor = a[r][col] / a[pivot_row][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= factor * a[pivot_row][c];
            b[r] -= factor * b[pivot_row];
        }
        pivot_col.push_back(col);
        ++pivot_row;
    }
    for (size_t r = pivot_row; r < rows; ++r) {
        if (b[r] != 0) return std::nullopt;
    }
    Point x(cols, Rational(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) {
        x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    }
    return x;
}

std::optional<Point> solve_square(Matrix a, Point b) {
    const size_t n = a.size();
    Matrix probe = a;
    if (matrix_rank(std::move(probe)) != static_cast<int>(n)) return std::nullopt;
    return solve_linear(std::move(a), std::move(b));
}

std::vector<Point> vertices(const ConstraintSystem& system) {
    ConstraintSystem closed(system.ambient_dim);
    for (const auto& c : system.constraints) {
        closed.constraints.push_back({c.form, c.rel == Rel::LT ? Rel::LE : c.rel});
    }
    closed = closed.simplified();
    if (!is_feasible(closed)) return {};
    if (!system_is_bounded(closed)) {
        throw UnboundedInput("vertex enumeration requires a bounded closure");
    }
    const int n = closed.ambient_dim;
    if (n == 0) return {Point{}};

    std::vector<Point> found;
    const size_t m = closed.constraints.size();
    std::vector<size_t> pick;
    // Enumerate n-subsets of constraints; each determines a candidate vertex
    // when the chosen forms are independent.
    auto consider = [&](const std::vector<size_t>& subset) {
        Matrix a;
        Point b;
        for (size_t idx : subset) {
            const auto& form = closed.constraints[idx].form;
            a.emplace_back(form.coeffs);
            b.push_back(-form.constant);
        }
        auto solution = solve_square(std::move(a), std::move(b));
        if (!solution || !closed.contains(*solution)) return;
        if (std::find(found.begin(), found.end(), *solution) == found.end()) {
            found.push_back(*solution);
        }
    };
    auto recurse = [&](auto&& self, size_t start) -> void {
        if (static_cast<int>(pick.size()) == n) {
            consider(pick);
            return;
        }
        for (size_t i = start; i < m; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 0);
    std::sort(found.begin(), found.end());
    return found;
}

} // namespace ominal
