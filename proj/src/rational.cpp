#include "liesym/rational.hpp"

#include <sstream>

namespace liesym {

Rational rat_pow(const Rational& base, long long e) {
    if (e < 0) return Rational(1) / rat_pow(base, -e);
    Rational r = 1, b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

namespace {

std::optional<BigInt> int_root(const BigInt& n, const BigInt& k) {
    if (n < 0) return std::nullopt;
    if (n == 0 || n == 1) return n;
    // Newton iteration on integers.
    BigInt x = 1;
    BigInt hi = n;
    while (x < hi) {
        BigInt mid = (x + hi) / 2 + 1;
        BigInt p = 1;
        bool over = false;
        for (BigInt i = 0; i < k; ++i) {
            p *= mid;
            if (p > n) { over = true; break; }
        }
        if (over) hi = mid - 1;
        else x = mid;
    }
    BigInt p = 1;
    for (BigInt i = 0; i < k; ++i) p *= x;
    if (p == n) return x;
    return std::nullopt;
}

}  // namespace

std::optional<Rational> rat_root(const Rational& base, const BigInt& k) {
    if (k <= 0) return std::nullopt;
    if (base < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = rat_root(-base, k);
        if (!r) return std::nullopt;
        return -*r;
    }
    auto rn = int_root(numerator(base), k);
    if (!rn) return std::nullopt;
    auto rd = int_root(denominator(base), k);
    if (!rd) return std::nullopt;
    return Rational(*rn, *rd);
}

std::string rat_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

}  // namespace liesym
