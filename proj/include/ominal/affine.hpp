#pragma once

#include "ominal/errors.hpp"
#include "ominal/rational.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace ominal {

// coeffs . x + constant, over a fixed ambient dimension.
struct AffineForm {
    std::vector<Rational> coeffs;
    Rational constant;

    AffineForm() = default;
    explicit AffineForm(int dim) : coeffs(static_cast<size_t>(dim)), constant(0) {}
    AffineForm(std::vector<Rational> c, Rational k) : coeffs(std::move(c)), constant(std::move(k)) {}

    int dim() const { return static_cast<int>(coeffs.size()); }

    static AffineForm constant_form(int dim, const Rational& value);
    static AffineForm variable(int dim, int index);

    Rational eval(const Point& point) const;
    bool is_constant() const;
    bool is_zero() const;

    AffineForm& operator+=(const AffineForm& other);
    AffineForm& operator-=(const AffineForm& other);
    AffineForm& operator*=(const Rational& scalar);

    friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
    friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
    friend AffineForm operator*(AffineForm a, const Rational& s) { return a *= s; }
    friend AffineForm operator*(const Rational& s, AffineForm a) { return a *= s; }
    friend AffineForm operator-(AffineForm a) { return a *= Rational(-1); }

    bool operator==(const AffineForm& other) const = default;

    // Same form with the coordinate `axis` removed; requires coeffs[axis] == 0.
    AffineForm drop_axis(int axis) const;
    // Same form viewed in dim()+1 variables with a zero coefficient inserted
    // at position `axis`.
    AffineForm insert_axis(int axis) const;
    // Substitute x[axis] := replacement (an affine form in the same space with
    // replacement.coeffs[axis] == 0), then drop the axis.
    AffineForm substitute_axis(int axis, const AffineForm& replacement) const;

    // Divides by the gcd of all numerators times lcm of denominators so that
    // proportional forms get identical keys; flips sign so the first nonzero
    // coefficient (or the constant) is positive. Returns the scale applied.
    AffineForm normalized(int* sign_flip = nullptr) const;
};

// Convenience builder: terms are (variable index, coefficient).
AffineForm lin(int dim, std::initializer_list<std::pair<int, Rational>> terms,
               const Rational& constant = Rational(0));

// Distinct non-constant forms up to scaling and sign, sorted.
std::vector<AffineForm> canonical_forms(const std::vector<AffineForm>& forms);

enum class Rel { LT, LE, EQ };

// form(x) REL 0.
struct LinearConstraint {
    AffineForm form;
    Rel rel = Rel::LE;

    bool satisfied(const Point& point) const;
    bool operator==(const LinearConstraint& other) const = default;
};

// Conjunction of constraints over one ambient space.
struct ConstraintSystem {
    int ambient_dim = 0;
    std::vector<LinearConstraint> constraints;

    ConstraintSystem() = default;
    explicit ConstraintSystem(int dim) : ambient_dim(dim) {}

    ConstraintSystem& add(const AffineForm& form, Rel rel);
    ConstraintSystem& lt(const AffineForm& form) { return add(form, Rel::LT); }
    ConstraintSystem& le(const AffineForm& form) { return add(form, Rel::LE); }
    ConstraintSystem& eq(const AffineForm& form) { return add(form, Rel::EQ); }
    // ge/gt add the negated form.
    ConstraintSystem& ge(const AffineForm& form) { return add(-form, Rel::LE); }
    ConstraintSystem& gt(const AffineForm& form) { return add(-form, Rel::LT); }

    bool contains(const Point& point) const;

    // Concatenation; throws DimensionMismatch on differing ambient dims.
    ConstraintSystem intersect(const ConstraintSystem& other) const;

    ConstraintSystem insert_axis(int axis) const;
    ConstraintSystem substitute_axis(int axis, const AffineForm& replacement) const;

    // Drops duplicates and tautologies; keeps one canonical "false" constraint
    // if some constraint is identically violated.
    ConstraintSystem simplified() const;
};

std::string to_string(const AffineForm& form);
std::string to_string(const LinearConstraint& constraint);
std::string to_string(const ConstraintSystem& system);

} // namespace ominal
