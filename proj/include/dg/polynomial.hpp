#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dg/context.hpp"
#include "dg/rational.hpp"

namespace dg {

/// Exponent vector over a chart, in Koszul-normal form: factors are read in
/// declaration order and odd coordinates carry exponent at most 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int n_coords) : exps_(static_cast<size_t>(n_coords), 0) {}

    int exp(int i) const { return exps_[static_cast<size_t>(i)]; }
    void set_exp(int i, int e) { exps_[static_cast<size_t>(i)] = e; }
    int n_coords() const { return static_cast<int>(exps_.size()); }

    bool is_one() const;
    int total_exponent() const;
    int degree(const Context& ctx) const;
    int parity(const Context& ctx) const;

    /// Graded-lexicographic order (total exponent, then exponent vector).
    bool operator<(const Monomial& rhs) const;
    bool operator==(const Monomial& rhs) const { return exps_ == rhs.exps_; }

    /// Koszul product of naturally-ordered words: sign from moving each odd
    /// factor of rhs past the later odd factors of lhs. Returns nothing when
    /// an odd coordinate would be squared.
    static std::optional<std::pair<Monomial, int>> mul(const Monomial& a, const Monomial& b,
                                                       const Context& ctx);

private:
    std::vector<int> exps_;
};

/// Graded-commutative polynomial with exact rational coefficients, always in
/// normal form (no zero coefficients, monomials canonical).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Context ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(const Context& ctx) { return Polynomial(ctx); }
    static Polynomial constant(const Context& ctx, const Rational& c);
    static Polynomial coordinate(const Context& ctx, int i, int power = 1);
    static Polynomial monomial(const Context& ctx, const Monomial& m, const Rational& c);

    const Context& context() const { return ctx_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    bool operator==(const Polynomial& rhs) const;
    bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

    /// Left graded derivative: commute one occurrence of x_i to the front,
    /// delete it. A derivation of degree -|x_i|.
    Polynomial partial(int i) const;

    struct Degree {
        enum class Kind { zero, homogeneous, inhomogeneous } kind;
        int value = 0;  // meaningful only when homogeneous
    };
    Degree degree_of() const;
    bool is_homogeneous_of_degree(int d) const;

    /// Splits into (even, odd) by degree parity of the monomials.
    std::pair<Polynomial, Polynomial> parity_split() const;
    /// All (degree, homogeneous part) pairs, ascending by degree.
    std::vector<std::pair<int, Polynomial>> homogeneous_components() const;
    /// Terms of exactly the given degree.
    Polynomial component(int degree) const;
    /// Drops terms whose total exponent exceeds the bound (formal-series use).
    Polynomial truncate_total_exponent(int max_total) const;

    std::string to_string() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    Context ctx_;
    std::map<Monomial, Rational> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

std::string to_string(const Monomial& m, const Context& ctx);

void require_same_context(const Context& a, const Context& b, const char* where);

}  // namespace dg
