#pragma once

// Exact rational arithmetic used by every metric computation.  Values are
// kept in lowest terms with positive denominators, so every comparison in
// the library is decidable with no tolerance.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace bilip {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("rational: zero denominator");
    return Rational(num, den);
}

/// Parses "p/q" or "p" (decimal integers, optional leading '-').
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> Error { return Error("rational: cannot parse '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw bad();
        BigInt d(den);
        if (d <= 0) throw Error("rational: denominator must be positive in '" + text + "'");
        return Rational(BigInt(num), d);
    } catch (const std::exception&) {
        throw bad();
    }
}

/// Canonical form: "p" when the denominator is 1, else "p/q".
inline std::string rational_to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// 2^k as an exact rational, k may be negative.
inline Rational pow2(int k) {
    BigInt p = BigInt(1) << (k >= 0 ? k : -k);
    return k >= 0 ? Rational(p) : Rational(1, p);
}

/// n^k for integer n >= 1, k >= 0.
inline BigInt ipow(std::int64_t base, int k) {
    BigInt r = 1;
    for (int i = 0; i < k; ++i) r *= base;
    return r;
}

/// Exact square root when the argument is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    BigInt n = rat_num(r), d = rat_den(r);
    BigInt sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

}  // namespace bilip
