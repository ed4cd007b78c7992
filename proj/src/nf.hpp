#pragma once

// Rational-function normal form behind Expr::normalize. A value is held as
//   num / prod(den_i ^ k_i)
// where num is an expanded multivariate polynomial over "atoms" (variables,
// parameters, exp/ln kernels, fractional-power bases) and every den_i is a
// primitive polynomial factor with positive leading coefficient. Exp kernels
// are units and never appear in the denominator. Zero has an empty num.

#include "liesym/expr.hpp"

#include <map>
#include <optional>

namespace liesym::nf {

// atom -> exponent; exponents are > 0, exp-kernel atoms always carry 1.
using Mono = std::map<Expr, Rational, ExprLess>;

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

using Poly = std::map<Mono, Rational, MonoLess>;
using DenMap = std::map<Expr, int, ExprLess>;

struct NF {
    Poly num;
    DenMap den;
    bool is_zero() const { return num.empty(); }
};

Poly poly_one();
Poly poly_const(const Rational& c);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, long long n);
std::optional<Poly> try_exact_divide(const Poly& n, const Poly& d);

// p == scalar * mono_gcd * primitive; primitive has coprime integer
// coefficients and positive leading coefficient.
struct Factored {
    Rational scalar;
    Mono mono_gcd;
    Poly primitive;  // may be the constant-1 poly
};
Factored factor_normalize(const Poly& p);

NF nf_zero();
NF nf_one();
NF nf_const(const Rational& c);
NF nf_atom(const Expr& atom_tree);

NF nf_add(const NF& a, const NF& b);
NF nf_sub(const NF& a, const NF& b);
NF nf_neg(const NF& a);
NF nf_mul(const NF& a, const NF& b);
NF nf_inv(const NF& a);
NF nf_div(const NF& a, const NF& b);
NF nf_pow(const NF& a, const Rational& q);
NF nf_exp(const NF& arg);
NF nf_ln(const NF& arg);

// Multiply a by atom^e, dispatching on the atom kind (kernel merge, integer
// powers of compound bases expanded, negative powers moved to den).
void nf_mul_atom(NF& a, const Expr& atom_tree, const Rational& e);

void cancel(NF& a);

NF to_nf(const Expr& e);
Expr tree_from_nf(const NF& v);

// x / y / kernel degree of a monomial (kernel degree = coefficient q when
// the exp argument is q*x, else 0).
Rational mono_var_degree(const Mono& m, Var v);
Rational mono_kernel_degree(const Mono& m);

}  // namespace liesym::nf
