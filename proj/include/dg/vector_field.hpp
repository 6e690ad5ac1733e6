#pragma once

#include <string>
#include <vector>

#include "dg/polynomial.hpp"

namespace dg {

/// Graded derivation of the function algebra, stored by coefficients:
/// X = sum_k X_k d/dx_k. Equality is decidable (normal forms).
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(const Context& ctx);

    static VectorField zero(const Context& ctx) { return VectorField(ctx); }
    static VectorField coordinate(const Context& ctx, int k);

    const Context& context() const { return ctx_; }
    const Polynomial& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
    void set_coeff(int k, Polynomial p);

    bool is_zero() const;

    /// X(f) = sum_k X_k * partial_k(f).
    Polynomial apply(const Polynomial& f) const;

    VectorField operator+(const VectorField& rhs) const;
    VectorField operator-(const VectorField& rhs) const;
    VectorField operator-() const;
    VectorField operator*(const Rational& c) const;
    VectorField& operator+=(const VectorField& rhs);
    bool operator==(const VectorField& rhs) const;
    bool operator!=(const VectorField& rhs) const { return !(*this == rhs); }

    /// Left module action f*X (no sign: coefficients sit left of partials).
    VectorField mul_left(const Polynomial& f) const;

    /// Derivation degree: X homogeneous of degree d iff every nonzero X_k is
    /// homogeneous with deg X_k - |x_k| = d.
    Polynomial::Degree degree_of() const;
    /// Splits into (even, odd) parts by derivation parity.
    std::pair<VectorField, VectorField> parity_split() const;
    /// Homogeneous components by derivation degree.
    std::vector<std::pair<int, VectorField>> homogeneous_components() const;

    std::string to_string() const;

private:
    Context ctx_;
    std::vector<Polynomial> coeffs_;
};

inline VectorField operator*(const Rational& c, const VectorField& X) { return X * c; }

/// Graded commutator [X,Y] = X∘Y - (-1)^{|X||Y|} Y∘X, extended bilinearly to
/// inhomogeneous arguments. Computed on coefficients: a derivation is
/// determined by its action on coordinates.
VectorField bracket(const VectorField& X, const VectorField& Y);

struct DgManifold {
    Context ctx;
    VectorField Q;
};

struct HomologicalReport {
    bool pass = true;
    // coordinate name -> reason, for each failed condition
    std::vector<std::pair<std::string, std::string>> violations;
};

/// Q homogeneous of degree +1 (each Q_k of degree |x_k|+1 or zero) and
/// [Q,Q] = 0, i.e. Q(Q_k) = 0 for every k.
HomologicalReport validate_homological(const DgManifold& m);

/// L_Q X = [Q, X]; degree +1 and squares to zero on valid manifolds.
VectorField lie_derivative(const DgManifold& m, const VectorField& X);

}  // namespace dg
