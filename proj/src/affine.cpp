#include "ominal/affine.hpp"

#include <algorithm>
#include <cassert>

namespace ominal {

AffineForm AffineForm::constant_form(int dim, const Rational& value) {
    AffineForm f(dim);
    f.constant = value;
    return f;
}

AffineForm AffineForm::variable(int dim, int index) {
    assert(index >= 0 && index < dim);
    AffineForm f(dim);
    f.coeffs[static_cast<size_t>(index)] = 1;
    return f;
}

Rational AffineForm::eval(const Point& point) const {
    assert(static_cast<int>(point.size()) == dim());
    Rational acc = constant;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) acc += coeffs[i] * point[i];
    }
    return acc;
}

bool AffineForm::is_constant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

bool AffineForm::is_zero() const { return constant == 0 && is_constant(); }

AffineForm& AffineForm::operator+=(const AffineForm& other) {
    assert(dim() == other.dim());
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
    constant += other.constant;
    return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
    assert(dim() == other.dim());
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
    constant -= other.constant;
    return *this;
}

AffineForm& AffineForm::operator*=(const Rational& scalar) {
    for (auto& c : coeffs) c *= scalar;
    constant *= scalar;
    return *this;
}

AffineForm AffineForm::drop_axis(int axis) const {
    assert(axis >= 0 && axis < dim());
    assert(coeffs[static_cast<size_t>(axis)] == 0);
    AffineForm out;
    out.coeffs.reserve(coeffs.size() - 1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (static_cast<int>(i) != axis) out.coeffs.push_back(coeffs[i]);
    }
    out.constant = constant;
    return out;
}

AffineForm AffineForm::insert_axis(int axis) const {
    assert(axis >= 0 && axis <= dim());
    AffineForm out;
    out.coeffs.reserve(coeffs.size() + 1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (static_cast<int>(i) == axis) out.coeffs.emplace_back(0);
        out.coeffs.push_back(coeffs[i]);
    }
    if (axis == dim()) out.coeffs.emplace_back(0);
    out.constant = constant;
    return out;
}

AffineForm AffineForm::substitute_axis(int axis, const AffineForm& replacement) const {
    assert(replacement.dim() == dim());
    assert(replacement.coeffs[static_cast<size_t>(axis)] == 0);
    AffineForm out = *this;
    const Rational a = out.coeffs[static_cast<size_t>(axis)];
    out.coeffs[static_cast<size_t>(axis)] = 0;
    if (a != 0) out += a * replacement;
    return out.drop_axis(axis);
}

AffineForm AffineForm::normalized(int* sign_flip) const {
    // Scale so all entries are coprime integers, then orient.
    Integer num_gcd = 0;
    Integer den_lcm = 1;
    auto absorb = [&](const Rational& value) {
        if (value == 0) return;
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(numerator(value)));
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(value));
    };
    for (const auto& c : coeffs) absorb(c);
    absorb(constant);
    AffineForm out = *this;
    if (num_gcd != 0) {
        out *= Rational(den_lcm, num_gcd);
    }
    int flip = 1;
    for (const auto& c : out.coeffs) {
        if (c != 0) {
            flip = c > 0 ? 1 : -1;
            break;
        }
    }
    if (flip == 1 && out.is_constant() && out.constant < 0) flip = -1;
    if (flip == -1) out *= Rational(-1);
    if (sign_flip) *sign_flip = flip;
    return out;
}

AffineForm lin(int dim, std::initializer_list<std::pair<int, Rational>> terms, const Rational& constant) {
    AffineForm f(dim);
    for (const auto& [index, coeff] : terms) {
        assert(index >= 0 && index < dim);
        f.coeffs[static_cast<size_t>(index)] += coeff;
    }
    f.constant = constant;
    return f;
}

bool LinearConstraint::satisfied(const Point& point) const {
    const Rational v = form.eval(point);
    switch (rel) {
        case Rel::LT: return v < 0;
        case Rel::LE: return v <= 0;
        case Rel::EQ: return v == 0;
    }
    return false;
}

ConstraintSystem& ConstraintSystem::add(const AffineForm& form, Rel rel) {
    assert(form.dim() == ambient_dim);
    constraints.push_back({form, rel});
    return *this;
}

bool ConstraintSystem::contains(const Point& point) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const LinearConstraint& c) { return c.satisfied(point); });
}

ConstraintSystem ConstraintSystem::intersect(const ConstraintSystem& other) const {
    if (ambient_dim != other.ambient_dim) {
        throw DimensionMismatch("cannot intersect systems of ambient dims " +
                                std::to_string(ambient_dim) + " and " +
                                std::to_string(other.ambient_dim));
    }
    ConstraintSystem out = *this;
    out.constraints.insert(out.constraints.end(), other.constraints.begin(), other.constraints.end());
    return out;
}

ConstraintSystem ConstraintSystem::insert_axis(int axis) const {
    ConstraintSystem out(ambient_dim + 1);
    out.constraints.reserve(constraints.size());
    for (const auto& c : constraints) out.constraints.push_back({c.form.insert_axis(axis), c.rel});
    return out;
}

ConstraintSystem ConstraintSystem::substitute_axis(int axis, const AffineForm& replacement) const {
    ConstraintSystem out(ambient_dim - 1);
    out.constraints.reserve(constraints.size());
    for (const auto& c : constraints) {
        out.constraints.push_back({c.form.substitute_axis(axis, replacement), c.rel});
    }
    return out;
}

ConstraintSystem ConstraintSystem::simplified() const {
    ConstraintSystem out(ambient_dim);
    for (const auto& c : constraints) {
        if (c.form.is_constant()) {
            const Rational& k = c.form.constant;
            const bool holds = (c.rel == Rel::LT && k < 0) || (c.rel == Rel::LE && k <= 0) ||
                               (c.rel == Rel::EQ && k == 0);
            if (holds) continue;
            // Identically false: the whole system collapses.
            ConstraintSystem falsum(ambient_dim);
            falsum.add(AffineForm::constant_form(ambient_dim, Rational(1)), Rel::LE);
            return falsum;
        }
        LinearConstraint normalized{c.form.normalized(), c.rel};
        if (c.rel == Rel::EQ) {
            // Orientation is irrelevant for equalities; normalized() already
            // fixed it.
        } else {
            // Inequalities may not flip orientation: re-normalize scale only.
            int flip = 1;
            normalized.form = c.form.normalized(&flip);
            if (flip == -1) normalized.form *= Rational(-1);
        }
        if (std::find(out.constraints.begin(), out.constraints.end(), normalized) ==
            out.constraints.end()) {
            out.constraints.push_back(normalized);
        }
    }
    return out;
}

std::string to_string(const AffineForm& form) {
    std::string out;
    bool first = true;
    for (int i = 0; i < form.dim(); ++i) {
        const Rational& c = form.coeffs[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        const Rational mag = rational_abs(c);
        if (mag != 1) out += to_string(mag) + "*";
        out += "x" + std::to_string(i + 1);
        first = false;
    }
    if (first) return to_string(form.constant);
    if (form.constant != 0) {
        out += form.constant > 0 ? " + " : " - ";
        out += to_string(rational_abs(form.constant));
    }
    return out;
}

std::string to_string(const LinearConstraint& constraint) {
    std::string rel;
    switch (constraint.rel) {
        case Rel::LT: rel = " < 0"; break;
        case Rel::LE: rel = " <= 0"; break;
        case Rel::EQ: rel = " = 0"; break;
    }
    return to_string(constraint.form) + rel;
}

std::string to_string(const ConstraintSystem& system) {
    std::string out = "{";
    for (size_t i = 0; i < system.constraints.size(); ++i) {
        if (i) out += ", ";
        out += to_string(system.constraints[i]);
    }
    out += "}";
    return out;
}

std::vector<AffineForm> canonical_forms(const std::vector<AffineForm>& forms) {
    std::vector<AffineForm> out;
    for (const auto& form : forms) {
        if (form.is_constant()) continue;
        out.push_back(form.normalized());
    }
    std::sort(out.begin(), out.end(), [](const AffineForm& a, const AffineForm& b) {
        if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
        return a.constant < b.constant;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ominal
