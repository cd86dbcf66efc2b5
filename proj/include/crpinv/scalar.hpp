#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <gmpxx.h>

namespace crpinv
{

/// Exact rational backed by GMP; arithmetic results are always canonical
/// (lowest terms, positive denominator).
using Rational = mpq_class;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double>
{
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
};

template <>
struct ScalarTraits<Rational>
{
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";

    static Rational abs(const Rational& x) { return ::abs(x); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <typename T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

template <typename T>
concept Scalar = requires { ScalarTraits<T>::exact; };

/// Parses "p/q" or "p" into a canonical rational. Throws ParseError.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);

} // namespace crpinv
