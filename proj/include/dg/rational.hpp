#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dg {

// Exact arbitrary-precision rational. Always stored in lowest terms with
// positive denominator (boost canonicalizes on construction and arithmetic).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational rational_of(long num, long den = 1) { return Rational(num, den); }

inline Rational factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

}  // namespace dg
