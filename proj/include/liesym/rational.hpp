#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace liesym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& q) { return numerator(q); }
inline BigInt rat_den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline long long to_long(const Rational& q) {
    return numerator(q).convert_to<long long>();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Floor of an exact rational.
inline BigInt rat_floor(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt quo = n / d;
    if (n % d != 0 && n < 0) quo -= 1;
    return quo;
}

Rational rat_pow(const Rational& base, long long e);

// Exact k-th root if it exists (k >= 1, base >= 0 for even k).
std::optional<Rational> rat_root(const Rational& base, const BigInt& k);

std::string rat_to_string(const Rational& q);

}  // namespace liesym
