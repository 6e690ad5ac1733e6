#pragma once

#include <string>
#include <vector>

#include "dg/rational.hpp"

namespace dg {

/// Dense formal power series over Q, truncated at a fixed order (inclusive).
class PowerSeries {
public:
    explicit PowerSeries(int order) : coeffs_(static_cast<size_t>(order) + 1, Rational(0)) {}

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }
    Rational& coeff(int k) { return coeffs_[static_cast<size_t>(k)]; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    PowerSeries operator+(const PowerSeries& rhs) const;
    PowerSeries operator-(const PowerSeries& rhs) const;
    PowerSeries operator*(const PowerSeries& rhs) const;
    PowerSeries operator*(const Rational& c) const;
    bool operator==(const PowerSeries& rhs) const { return coeffs_ == rhs.coeffs_; }

    /// g(f(t)) for f with zero constant term.
    PowerSeries compose(const PowerSeries& inner) const;
    /// Multiplicative inverse; requires nonzero constant term.
    PowerSeries inverse() const;
    PowerSeries truncate(int new_order) const;

    static PowerSeries exp_series(int order);    // sum t^k / k!
    static PowerSeries log1p_series(int order);  // log(1+t)
    /// (1 - e^{-t}) / t = sum_{r>=0} (-1)^r t^r / (r+1)!
    static PowerSeries todd_arg_series(int order);
    /// log((1 - e^{-t}) / t)
    static PowerSeries todd_log_series(int order);

private:
    std::vector<Rational> coeffs_;
};

/// Named-series front end: f in {"exp", "log", "todd-log"}; coefficients of
/// t^0..t^n. Throws on unknown names.
std::vector<Rational> series_coefficients(const std::string& name, int n);

}  // namespace dg
