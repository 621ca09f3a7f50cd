#pragma once

#include "ominal/semilinear.hpp"

#include <random>

namespace ominal::testing {

// Deterministic randomness for property tests; one seed per test file keeps
// failures reproducible from the doctest output alone.
class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    int integer(int lo, int hi) {
        std::uniform_int_distribution<int> dist(lo, hi);
        return dist(engine_);
    }

    Rational rational(int max_num = 8, int max_den = 4) {
        return Rational(integer(-max_num, max_num), integer(1, max_den));
    }

    Point point(int dim, int max_num = 8, int max_den = 4) {
        Point p;
        p.reserve(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) p.push_back(rational(max_num, max_den));
        return p;
    }

    AffineForm form(int dim, int max_coeff = 3) {
        AffineForm f(dim);
        for (auto& c : f.coeffs) c = integer(-max_coeff, max_coeff);
        f.constant = rational();
        return f;
    }

    // A conjunction that is frequently feasible and often bounded: a box with
    // a few extra half-space or equality cuts.
    ConstraintSystem system(int dim, bool force_bounded) {
        ConstraintSystem sys(dim);
        if (force_bounded) {
            for (int i = 0; i < dim; ++i) {
                const Rational lo = rational();
                const AffineForm x = AffineForm::variable(dim, i);
                sys.ge(x - AffineForm::constant_form(dim, lo));
                sys.le(x - AffineForm::constant_form(dim, lo + Rational(integer(1, 6))));
            }
        }
        const int extra = integer(1, 3);
        for (int i = 0; i < extra; ++i) {
            const int kind = integer(0, 5);
            const Rel rel = kind == 0 ? Rel::EQ : (kind <= 3 ? Rel::LE : Rel::LT);
            sys.add(form(dim), rel);
        }
        return sys;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace ominal::testing
