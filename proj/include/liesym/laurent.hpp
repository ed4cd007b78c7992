#pragma once

#include "liesym/expr.hpp"

#include <map>
#include <tuple>

namespace liesym {

// Monomial exponents (x power, y power, exp-kernel power). Kernel powers are
// exact rationals so half-integer kernels collect alongside integer ones.
struct LaurentKey {
    long x = 0;
    long y = 0;
    Rational k = 0;

    bool operator<(const LaurentKey& o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return k < o.k;
    }
    bool operator==(const LaurentKey& o) const {
        return x == o.x && y == o.y && k == o.k;
    }
};

// Finite Laurent polynomial in x, y and the exp(q*x) kernel family with
// Expr coefficients (free of x, y and kernels; typically linear in the
// unknown ansatz parameters). Zero coefficients are never stored.
struct LaurentPoly {
    std::map<LaurentKey, Expr> terms;
};

// Throws NonLaurentError when e contains ln kernels, fractional powers of
// x or y, non-monomial denominators, or exp arguments other than q*x.
LaurentPoly as_laurent(const Expr& e);

// Re-expansion; normalize(to_expr(as_laurent(e))) == normalize(e).
Expr to_expr(const LaurentPoly& p);

}  // namespace liesym
