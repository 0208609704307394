#pragma once

// Exact rational arithmetic plus the handful of integer special values
// (factorials, binomials, harmonic numbers) that every exact formula in this
// library is assembled from.  Nothing here ever rounds: doubles appear only
// in the explicit to_double conversions.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <charconv>
#include <array>

#include <boost/multiprecision/cpp_int.hpp>

namespace rho {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// n! as an exact integer.
inline BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Gamma(n) = (n-1)! at positive integer arguments only.
inline BigInt gamma_int(long n) {
    if (n < 1) throw std::invalid_argument("gamma_int: argument must be >= 1");
    return factorial(n - 1);
}

// Binomial coefficient C(n, k), zero outside the triangle.
inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt num = 1, den = 1;
    for (long i = 1; i <= k; ++i) {
        num *= (n - k + i);
        den *= i;
    }
    return num / den;  // exact: den always divides num
}

// Harmonic numbers H_n^(order) = sum_{j=1..n} 1/j^order, order in {1, 2}.
// harmonic(0, .) = 0.  These stand in for digamma/trigamma at integers:
// psi(n) = H_{n-1} - gamma and psi'(n) = pi^2/6 - H^{(2)}_{n-1}.
inline BigRational harmonic(long n, int order = 1) {
    if (n < 0) throw std::invalid_argument("harmonic: negative argument");
    if (order != 1 && order != 2) throw std::invalid_argument("harmonic: order must be 1 or 2");
    BigRational s = 0;
    for (long j = 1; j <= n; ++j) {
        BigInt d = j;
        if (order == 2) d *= j;
        s += BigRational(1, d);
    }
    return s;
}

// r^e for integer e (negative allowed when r != 0).
inline BigRational pow_rational(const BigRational& r, long e) {
    if (e < 0) {
        if (r == 0) throw std::domain_error("pow_rational: zero to negative power");
        return 1 / pow_rational(r, -e);
    }
    BigRational acc = 1, base = r;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline double to_double(const BigRational& r) {
    return r.template convert_to<double>();
}

// Canonical "p/q" rendering (plain "p" when the denominator is 1).
inline std::string rational_to_string(const BigRational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    std::string s = num.str();
    if (den != 1) s += "/" + den.str();
    return s;
}

// Shortest round-trip decimal of the double value (for JSON/CSV payloads).
inline std::string double_to_string(double x) {
    std::array<char, 32> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

// Fixed-point decimal expansion of an exact rational, truncated toward zero
// after `frac_digits` fractional digits.  Exact long division, no binary
// floating point involved.
inline std::string decimal_string(const BigRational& r, int frac_digits) {
    if (frac_digits < 0) throw std::invalid_argument("decimal_string: negative digit count");
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    std::string sign;
    if (num < 0) { sign = "-"; num = -num; }
    BigInt ip = num / den;
    BigInt rem = num % den;
    std::string s = sign + ip.str();
    if (frac_digits == 0) return s;
    s += ".";
    for (int i = 0; i < frac_digits; ++i) {
        rem *= 10;
        BigInt d = rem / den;
        rem %= den;
        s += static_cast<char>('0' + d.template convert_to<int>());
    }
    return s;
}

// pi^2 truncated to 52 decimal digits, stored exactly as a rational.  All
// decimal renderings of PiSquareValue go through this constant, so they are
// correct to well past the 30 digits the interface promises.
inline const BigRational& pi_squared_rational() {
    static const BigRational v = [] {
        const BigInt digits("98696044010893586188344909998761511353136994072407906");
        BigInt den = 1;
        for (int i = 0; i < 52; ++i) den *= 10;  // numerator carries 52 fractional digits
        return BigRational(digits, den);
    }();
    return v;
}

inline double pi_squared_double() {
    static const double v = to_double(pi_squared_rational());
    return v;
}

// Exact value of the form a + b*pi^2.  Closed under addition and
// multiplication by rationals; that is all the entropy-correlation formulas
// need.
struct PiSquareValue {
    BigRational a;  // rational part
    BigRational b;  // coefficient of pi^2

    PiSquareValue() : a(0), b(0) {}
    PiSquareValue(BigRational a_, BigRational b_) : a(std::move(a_)), b(std::move(b_)) {}

    PiSquareValue operator+(const PiSquareValue& o) const { return {a + o.a, b + o.b}; }
    PiSquareValue operator-(const PiSquareValue& o) const { return {a - o.a, b - o.b}; }
    PiSquareValue scaled(const BigRational& c) const { return {a * c, b * c}; }

    bool operator==(const PiSquareValue& o) const { return a == o.a && b == o.b; }

    double to_double() const { return rho::to_double(a) + rho::to_double(b) * pi_squared_double(); }

    // Decimal rendering through the exact rational pi^2 approximant
    // (>= 30 correct digits for the magnitudes arising here).
    std::string decimal(int frac_digits = 32) const {
        return decimal_string(a + b * pi_squared_rational(), frac_digits);
    }
};

} // namespace rho
