#pragma once

#include <random>

#include "dg/polynomial.hpp"
#include "dg/vector_field.hpp"

namespace dgtest {

using namespace dg;

/// Deterministic generator; avoids distribution objects so streams are
/// identical across platforms.
class Rng {
public:
    explicit Rng(unsigned seed) : eng_(seed) {}

    int pick(int bound) { return static_cast<int>(eng_() % static_cast<unsigned>(bound)); }

    Rational coefficient() {
        static const int values[] = {1, -1, 2, -2, 3, -3, 5, -5};
        int v = values[pick(8)];
        if (pick(4) == 0) return Rational(v, 1 + pick(3));
        return Rational(v);
    }

    Monomial monomial(const Context& ctx, int max_exp = 2) {
        Monomial m(ctx.size());
        for (int i = 0; i < ctx.size(); ++i) {
            int cap = ctx.parity(i) == 1 ? 1 : max_exp;
            m.set_exp(i, pick(cap + 1));
        }
        return m;
    }

    Polynomial polynomial(const Context& ctx, int terms = 3, int max_exp = 2) {
        Polynomial p(ctx);
        for (int t = 0; t < terms; ++t)
            p += Polynomial::monomial(ctx, monomial(ctx, max_exp), coefficient());
        return p;
    }

    /// Homogeneous polynomial: random terms filtered to one degree.
    Polynomial homogeneous(const Context& ctx, int degree, int tries = 24, int max_exp = 3) {
        Polynomial p(ctx);
        for (int t = 0; t < tries; ++t) {
            Monomial m = monomial(ctx, max_exp);
            if (m.degree(ctx) == degree) p += Polynomial::monomial(ctx, m, coefficient());
        }
        return p;
    }

    VectorField field(const Context& ctx, int terms = 2, int max_exp = 2) {
        VectorField x(ctx);
        for (int k = 0; k < ctx.size(); ++k) x.set_coeff(k, polynomial(ctx, terms, max_exp));
        return x;
    }

    /// Homogeneous vector field of the given derivation degree.
    VectorField homogeneous_field(const Context& ctx, int degree) {
        VectorField x(ctx);
        for (int k = 0; k < ctx.size(); ++k)
            x.set_coeff(k, homogeneous(ctx, degree + ctx.degree(k)));
        return x;
    }

private:
    std::mt19937 eng_;
};

inline Context r11() { return Context({{"x", 0}, {"xi", 1}}); }

inline Context two_odd() { return Context({{"xi1", 1}, {"xi2", 1}}); }

inline DgManifold r11_manifold() {
    Context ctx = r11();
    VectorField q(ctx);
    q.set_coeff(0, Polynomial::coordinate(ctx, 1));  // Q = xi d/dx
    return DgManifold{ctx, q};
}

inline DgManifold solvable2_manifold() {
    Context ctx = two_odd();
    VectorField q(ctx);
    q.set_coeff(1, -(Polynomial::coordinate(ctx, 0) * Polynomial::coordinate(ctx, 1)));
    return DgManifold{ctx, q};
}

}  // namespace dgtest
