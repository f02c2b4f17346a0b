#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "vcausal/errors.hpp"

namespace vcausal {

/// Exact rational scalar used by the certifier. GMP-backed, arbitrary precision.
using Rational = boost::multiprecision::mpq_rational;

/// Formats a rational as "p/q", with the denominator always present ("7/1").
inline std::string to_fraction_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// Parses "p", "p/q", or a plain decimal string ("0.25", "-1.5e-3") into an exact rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        if (s.find('/') != std::string::npos) return Rational(s);
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
            s.find('E') == std::string::npos)
            return Rational(s);

        // decimal: mantissa [.fraction] [e exponent]
        std::size_t epos = s.find_first_of("eE");
        std::string mant = s.substr(0, epos);
        long exp10 = 0;
        if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));

        std::size_t dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= static_cast<long>(mant.size() - dot - 1);
        }
        if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad rational literal: " + s);
        Rational r{boost::multiprecision::mpz_int(digits)};
        Rational ten(10);
        for (long i = 0; i < exp10; ++i) r *= ten;
        for (long i = 0; i > exp10; --i) r /= ten;
        return r;
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: " + s);
    }
}

/// Exact binary-float conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    return Rational(x);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

/// Scalar traits shared by float and exact code paths.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double default_tol() { return 1e-9; }
    static double abs(double x) { return x < 0 ? -x : x; }
    static double as_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational default_tol() { return Rational(0); }
    static Rational abs(const Rational& x) { return boost::multiprecision::abs(x); }
    static double as_double(const Rational& x) { return to_double(x); }
};

} // namespace vcausal
