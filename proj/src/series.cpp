#include "dg/series.hpp"

#include <stdexcept>

namespace dg {

PowerSeries PowerSeries::operator+(const PowerSeries& rhs) const {
    PowerSeries out(std::min(order(), rhs.order()));
    for (int k = 0; k <= out.order(); ++k) out.coeff(k) = coeff(k) + rhs.coeff(k);
    return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& rhs) const {
    PowerSeries out(std::min(order(), rhs.order()));
    for (int k = 0; k <= out.order(); ++k) out.coeff(k) = coeff(k) - rhs.coeff(k);
    return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& rhs) const {
    PowerSeries out(std::min(order(), rhs.order()));
    for (int i = 0; i <= out.order(); ++i) {
        if (coeff(i) == 0) continue;
        for (int j = 0; i + j <= out.order() && j <= rhs.order(); ++j)
            out.coeff(i + j) += coeff(i) * rhs.coeff(j);
    }
    return out;
}

PowerSeries PowerSeries::operator*(const Rational& c) const {
    PowerSeries out(order());
    for (int k = 0; k <= order(); ++k) out.coeff(k) = coeff(k) * c;
    return out;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner.coeff(0) != 0)
        throw std::invalid_argument("series composition needs zero constant term");
    PowerSeries out(inner.order());
    PowerSeries power(inner.order());
    power.coeff(0) = 1;
    for (int k = 0; k <= order(); ++k) {
        if (coeff(k) != 0) out = out + power * coeff(k);
        if (k < order()) power = power * inner;
    }
    return out;
}

PowerSeries PowerSeries::inverse() const {
    if (coeff(0) == 0) throw std::invalid_argument("series inverse needs nonzero constant term");
    PowerSeries out(order());
    out.coeff(0) = Rational(1) / coeff(0);
    for (int k = 1; k <= order(); ++k) {
        Rational acc(0);
        for (int j = 1; j <= k; ++j) acc += coeff(j) * out.coeff(k - j);
        out.coeff(k) = -acc / coeff(0);
    }
    return out;
}

PowerSeries PowerSeries::truncate(int new_order) const {
    PowerSeries out(new_order);
    for (int k = 0; k <= std::min(order(), new_order); ++k) out.coeff(k) = coeff(k);
    return out;
}

PowerSeries PowerSeries::exp_series(int order) {
    PowerSeries s(order);
    for (int k = 0; k <= order; ++k) s.coeff(k) = Rational(1) / factorial(static_cast<unsigned>(k));
    return s;
}

PowerSeries PowerSeries::log1p_series(int order) {
    PowerSeries s(order);
    for (int k = 1; k <= order; ++k) s.coeff(k) = Rational((k % 2) ? 1 : -1, k);
    return s;
}

PowerSeries PowerSeries::todd_arg_series(int order) {
    PowerSeries s(order);
    for (int r = 0; r <= order; ++r)
        s.coeff(r) = Rational((r % 2) ? -1 : 1) / factorial(static_cast<unsigned>(r) + 1);
    return s;
}

PowerSeries PowerSeries::todd_log_series(int order) {
    PowerSeries f = todd_arg_series(order);
    f.coeff(0) = 0;  // log(1 + (F - 1))
    return log1p_series(order).compose(f);
}

std::vector<Rational> series_coefficients(const std::string& name, int n) {
    if (name == "exp") return PowerSeries::exp_series(n).coeffs();
    if (name == "log") return PowerSeries::log1p_series(n).coeffs();
    if (name == "todd-log") return PowerSeries::todd_log_series(n).coeffs();
    throw std::invalid_argument("unknown series '" + name + "'");
}

}  // namespace dg
