#pragma once

#include "liesym/expr.hpp"

#include <string>
#include <vector>

namespace liesym {

// A first order ODE dy/dx = h(x, y). The denominators list the distinct
// denominator factors of h's canonical form (the singular locus).
struct Ode {
    Expr h;
    std::vector<Expr> denominators;
};

Ode make_ode(const Expr& h);

// Grammar (documented in the README):
//   ode     := "dy" "/" "dx" "=" expr
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := primary ("^" unary)?          right-associative
//   primary := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
// NUMBER is an integer or decimal literal (converted exactly to a rational);
// IDENT is one of x, y, r, s, C, c<k>, exp, ln. Exponents must evaluate to
// rational constants. Implicit multiplication is not supported.
Expr parse_expr(const std::string& text);

// Same grammar restricted to identifiers x, y, exp, ln.
Ode parse_ode(const std::string& text);

}  // namespace liesym
