#pragma once

#include <map>
#include <string>

#include "dg/vector_field.hpp"

namespace dg {

class SymTensor;

/// Differential operator in normal form sum_alpha f_alpha(x) * d^alpha, with
/// the partials of each word sorted by coordinate declaration order. The
/// exponent vector of a word reuses Monomial; a partial d/dx_i has parity
/// |x_i| and squares to zero when odd.
class DiffOperator {
public:
    DiffOperator() = default;
    explicit DiffOperator(const Context& ctx) : ctx_(ctx) {}

    static DiffOperator from_polynomial(const Polynomial& f);
    static DiffOperator from_vector_field(const VectorField& x);

    const Context& context() const { return ctx_; }
    const std::map<Monomial, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;

    void add_term(const Monomial& word, const Polynomial& coeff);

    DiffOperator operator+(const DiffOperator& rhs) const;
    DiffOperator operator-(const DiffOperator& rhs) const;
    DiffOperator operator*(const Rational& c) const;
    DiffOperator& operator+=(const DiffOperator& rhs);
    bool operator==(const DiffOperator& rhs) const;
    bool operator!=(const DiffOperator& rhs) const { return !(*this == rhs); }

    /// Action on functions; composition agrees with successive application.
    Polynomial apply(const Polynomial& p) const;

    /// Normal-ordered composition via the graded Leibniz rule
    /// d_i ∘ f = d_i(f) + (-1)^{|x_i||f|} f d_i.
    DiffOperator compose(const DiffOperator& rhs) const;

    /// Splits by operator parity (coefficient parity + word parity).
    std::pair<DiffOperator, DiffOperator> parity_split() const;

    /// Terms of maximal word length, as a symmetric tensor with identical keys.
    SymTensor top_symbol() const;

    std::string to_string() const;

private:
    Context ctx_;
    std::map<Monomial, Polynomial> terms_;
};

/// Element of Gamma(S(TM)): sum f * d_{i_1} ⊙ ... ⊙ d_{i_n} with the
/// symmetric word canonicalized by the same Koszul rules as operator words.
class SymTensor {
public:
    SymTensor() = default;
    explicit SymTensor(const Context& ctx) : ctx_(ctx) {}

    static SymTensor from_polynomial(const Polynomial& f);
    static SymTensor from_vector_field(const VectorField& x);

    const Context& context() const { return ctx_; }
    const std::map<Monomial, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const;

    void add_term(const Monomial& word, const Polynomial& coeff);

    SymTensor operator+(const SymTensor& rhs) const;
    SymTensor operator-(const SymTensor& rhs) const;
    SymTensor operator*(const Rational& c) const;
    SymTensor& operator+=(const SymTensor& rhs);
    bool operator==(const SymTensor& rhs) const;
    bool operator!=(const SymTensor& rhs) const { return !(*this == rhs); }

    /// Left module action f * s.
    SymTensor mul_left(const Polynomial& f) const;

    /// Component of word length exactly n.
    SymTensor component(int n) const;
    /// Word-length-1 part as a vector field.
    VectorField field_part() const;
    /// Word-length-0 part.
    Polynomial function_part() const;

    std::string to_string() const;

private:
    Context ctx_;
    std::map<Monomial, Polynomial> terms_;
};

/// [Q, D] = Q∘D - (-1)^{|D|} D∘Q; agrees with the Lie-derivative sum formula
/// on word operators.
DiffOperator lq_diffop(const DgManifold& m, const DiffOperator& d);

}  // namespace dg
