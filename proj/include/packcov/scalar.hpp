#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace packcov {

/// Exact rational scalar used by the certified arithmetic mode. Expression
/// templates are disabled so that arithmetic results deduce as Rational in
/// generic code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto its exit-code contract.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input files or unparsable numbers.
struct ParseError : Error {
    using Error::Error;
};

/// Out-of-range or inconsistent parameters (bad epsilon, bad resolution, ...).
struct ParameterError : Error {
    using Error::Error;
};

/// An operation's documented precondition does not hold for the input.
struct PreconditionError : Error {
    using Error::Error;
};

/// An internal verification failed. This never indicates bad user input;
/// it means a geometric routine produced something inconsistent.
struct GeometryError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Scalar traits: one code path for exact rationals and tolerant doubles.
// ---------------------------------------------------------------------------

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool is_exact = false;
    /// Point-classification tolerance.
    static constexpr double point_tol = 1e-9;
    /// Relative volume-comparison tolerance.
    static constexpr double volume_tol = 1e-9;

    static bool is_zero(double v, double scale = 1.0) {
        return std::fabs(v) <= point_tol * std::fmax(1.0, scale);
    }
    static double to_double(double v) { return v; }
    static double from_double(double v) { return v; }
    static double from_int(long v) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;

    static bool is_zero(const Rational& v, const Rational& = 0) { return v == 0; }
    static double to_double(const Rational& v) { return static_cast<double>(v); }
    /// Every finite double is a dyadic rational; the conversion is exact.
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw ParameterError("non-finite value cannot become a rational");
        if (v == 0.0) return Rational(0);
        int exp = 0;
        double frac = std::frexp(v, &exp);
        // 53 mantissa bits make frac * 2^53 integral.
        auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
        exp -= 53;
        Rational r(mant);
        if (exp >= 0) {
            r *= Rational(BigInt(1) << exp);
        } else {
            r /= Rational(BigInt(1) << -exp);
        }
        return r;
    }
    static Rational from_int(long v) { return Rational(v); }
};

template <class S>
double to_double(const S& v) {
    return ScalarTraits<S>::to_double(v);
}

/// Floor of an exact rational as a big integer.
inline BigInt rational_floor(const Rational& v) {
    BigInt num = numerator(v);
    BigInt den = denominator(v);
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

inline long rational_floor_long(const Rational& v) {
    return static_cast<long>(rational_floor(v));
}

/// Nearest dyadic rational with denominator 2^bits, rounding toward -inf.
inline Rational dyadic_floor(const Rational& v, unsigned bits) {
    BigInt scale = BigInt(1) << bits;
    return Rational(rational_floor(v * Rational(scale)), scale);
}

/// Canonical "p/q" form (q >= 1, gcd(p, q) = 1).
inline std::string rational_to_string(const Rational& v) {
    return numerator(v).str() + "/" + denominator(v).str();
}

inline Rational rational_from_string(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            if (text.find_first_of(".eE") != std::string::npos)
                return ScalarTraits<Rational>::from_double(std::stod(text));
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw ParseError("bad rational literal '" + text + "': " + e.what());
    }
}

}  // namespace packcov
