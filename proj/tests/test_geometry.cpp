#include "ominal/fourier_motzkin.hpp"

#include "ominal/errors.hpp"
#include "ominal/semilinear.hpp"
#include "test_support.hpp"

#include "doctest.h"

#include <algorithm>

using namespace ominal;

namespace {

// Unit square / standard triangle in two variables, used across cases.
ConstraintSystem unit_square() {
    ConstraintSystem sys(2);
    sys.ge(AffineForm::variable(2, 0));
    sys.le(lin(2, {{0, 1}}, -1));
    sys.ge(AffineForm::variable(2, 1));
    sys.le(lin(2, {{1, 1}}, -1));
    return sys;
}

ConstraintSystem standard_triangle() {
    ConstraintSystem sys(2);
    sys.ge(AffineForm::variable(2, 0));
    sys.ge(AffineForm::variable(2, 1));
    sys.le(lin(2, {{0, 1}, {1, 1}}, -1));
    return sys;
}

// Membership of a candidate point in the projection must match feasibility of
// the fiber over it; the fiber is a one-variable system obtained by plugging
// the candidate into every constraint.
bool fiber_is_feasible(const ConstraintSystem& sys, int axis, const Point& candidate) {
    ConstraintSystem fiber(1);
    for (const auto& c : sys.constraints) {
        AffineForm f(1);
        f.coeffs[0] = c.form.coeffs[static_cast<size_t>(axis)];
        f.constant = c.form.constant;
        size_t j = 0;
        for (size_t i = 0; i < c.form.coeffs.size(); ++i) {
            if (static_cast<int>(i) == axis) continue;
            f.constant += c.form.coeffs[i] * candidate[j++];
        }
        fiber.constraints.push_back({std::move(f), c.rel});
    }
    return is_feasible(fiber);
}

} // namespace

TEST_CASE("projection eliminates one variable exactly") {
    SUBCASE("triangle onto its base") {
        ConstraintSystem sys = standard_triangle();
        const ConstraintSystem projected = fm_project(sys, 1);
        ConstraintSystem expected(1);
        expected.ge(AffineForm::variable(1, 0));
        expected.le(lin(1, {{0, 1}}, -1));
        CHECK(sets_equal(SemilinearSet::from_system(projected),
                         SemilinearSet::from_system(expected)));
    }
    SUBCASE("equality substitution keeps strictness") {
        ConstraintSystem sys(2);
        sys.eq(lin(2, {{0, 1}, {1, -1}})); // x = y
        sys.lt(AffineForm::variable(2, 1)); // y < 0
        const ConstraintSystem projected = fm_project(sys, 1);
        ConstraintSystem expected(1);
        expected.lt(AffineForm::variable(1, 0));
        CHECK(sets_equal(SemilinearSet::from_system(projected),
                         SemilinearSet::from_system(expected)));
    }
    SUBCASE("contradictory strict pair projects to an infeasible system") {
        ConstraintSystem sys(2);
        sys.lt(lin(2, {{0, 1}, {1, -1}})); // x - y < 0
        sys.lt(lin(2, {{1, 1}, {0, -1}})); // y - x < 0
        CHECK_FALSE(is_feasible(fm_project(sys, 1)));
    }
}

TEST_CASE("random projections match fiber feasibility") {
    testing::Rng rng(20260814);
    int checked = 0;
    while (checked < 1000) {
        const int dim = rng.integer(2, 4);
        const ConstraintSystem sys = rng.system(dim, rng.integer(0, 1) == 0);
        const int axis = rng.integer(0, dim - 1);
        const ConstraintSystem projected = fm_project(sys, axis);
        for (int trial = 0; trial < 5; ++trial, ++checked) {
            const Point candidate = rng.point(dim - 1);
            REQUIRE(projected.contains(candidate) == fiber_is_feasible(sys, axis, candidate));
        }
    }
}

TEST_CASE("feasibility and sampling agree") {
    testing::Rng rng(7051);
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = rng.integer(1, 4);
        const ConstraintSystem sys = rng.system(dim, rng.integer(0, 1) == 0);
        const auto point = sample_point(sys);
        REQUIRE(point.has_value() == is_feasible(sys));
        if (point) REQUIRE(sys.contains(*point));
    }
}

TEST_CASE("vertex enumeration on frozen shapes") {
    SUBCASE("unit square has four corners") {
        const auto vs = vertices(unit_square());
        const std::vector<Point> expected = {
            {Rational(0), Rational(0)},
            {Rational(0), Rational(1)},
            {Rational(1), Rational(0)},
            {Rational(1), Rational(1)},
        };
        CHECK(vs == expected);
    }
    SUBCASE("standard triangle has three") {
        const auto vs = vertices(standard_triangle());
        const std::vector<Point> expected = {
            {Rational(0), Rational(0)},
            {Rational(0), Rational(1)},
            {Rational(1), Rational(0)},
        };
        CHECK(vs == expected);
    }
    SUBCASE("open square closes before enumeration") {
        ConstraintSystem sys(2);
        sys.gt(AffineForm::variable(2, 0));
        sys.lt(lin(2, {{0, 1}}, -1));
        sys.gt(AffineForm::variable(2, 1));
        sys.lt(lin(2, {{1, 1}}, -1));
        CHECK(vertices(sys).size() == 4);
    }
    SUBCASE("half-space is rejected") {
        ConstraintSystem sys(2);
        sys.ge(AffineForm::variable(2, 0));
        CHECK_THROWS_AS(vertices(sys), UnboundedInput);
    }
}

namespace {

// Random axis-aligned boxes have a closed-form vertex list, which gives an
// independent expectation for the enumerator.
std::vector<Point> box_corners(const std::vector<std::pair<Rational, Rational>>& sides) {
    std::vector<Point> out;
    const size_t n = sides.size();
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        Point p;
        for (size_t i = 0; i < n; ++i) {
            p.push_back((mask >> i) & 1 ? sides[i].second : sides[i].first);
        }
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("vertex enumeration matches box corners") {
    testing::Rng rng(411);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = rng.integer(1, 3);
        std::vector<std::pair<Rational, Rational>> sides;
        ConstraintSystem sys(dim);
        for (int i = 0; i < dim; ++i) {
            const Rational lo = rng.rational();
            const Rational hi = lo + Rational(rng.integer(1, 5));
            sides.emplace_back(lo, hi);
            const AffineForm x = AffineForm::variable(dim, i);
            sys.ge(x - AffineForm::constant_form(dim, lo));
            sys.le(x - AffineForm::constant_form(dim, hi));
        }
        REQUIRE(vertices(sys) == box_corners(sides));
    }
}

TEST_CASE("every vertex sits on enough independent active constraints") {
    testing::Rng rng(90210);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = rng.integer(2, 3);
        ConstraintSystem sys = rng.system(dim, true);
        std::vector<Point> vs;
        try {
            vs = vertices(sys);
        } catch (const UnboundedInput&) {
            continue;
        }
        for (const auto& v : vs) {
            Matrix active;
            for (const auto& c : sys.constraints) {
                if (c.form.eval(v) == 0) active.push_back(c.form.coeffs);
            }
            REQUIRE(matrix_rank(std::move(active)) == dim);
        }
    }
}

TEST_CASE("axis bounds read off the one-dimensional shadow") {
    ConstraintSystem sys(2);
    sys.ge(AffineForm::variable(2, 0));
    sys.lt(lin(2, {{0, 1}}, -1)); // x < 1
    sys.eq(lin(2, {{1, 1}}, -2)); // y = 2
    const auto upper = axis_upper_bound(sys, 0);
    REQUIRE(upper.has_value());
    CHECK(upper->value == 1);
    CHECK_FALSE(upper->attained);
    const auto lower = axis_lower_bound(sys, 0);
    REQUIRE(lower.has_value());
    CHECK(lower->value == 0);
    CHECK(lower->attained);
    const auto y_upper = axis_upper_bound(sys, 1);
    REQUIRE(y_upper.has_value());
    CHECK(y_upper->value == 2);
    CHECK(y_upper->attained);
    CHECK_FALSE(axis_upper_bound(ConstraintSystem(1), 0).has_value());
}

TEST_CASE("exact solvers behave on random integer matrices") {
    testing::Rng rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.integer(1, 4);
        Matrix a;
        for (int i = 0; i < n; ++i) {
            std::vector<Rational> row;
            for (int j = 0; j < n; ++j) row.emplace_back(rng.integer(-4, 4));
            a.push_back(std::move(row));
        }
        const Point x_true = rng.point(n);
        Point b(static_cast<size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                b[static_cast<size_t>(i)] +=
                    a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x_true[static_cast<size_t>(j)];
            }
        }
        const auto solved = solve_square(a, b);
        if (matrix_rank(a) == n) {
            REQUIRE(solved.has_value());
            REQUIRE(*solved == x_true);
        } else {
            REQUIRE_FALSE(solved.has_value());
        }
    }
}
