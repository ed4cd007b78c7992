#pragma once

#include "liesym/errors.hpp"
#include "liesym/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace liesym {

// Plane variables plus the formal derivative slot y_x used by prolongation
// and the canonical-plane coordinates (r, s).
enum class Var : unsigned char { x = 0, y = 1, yx = 2, r = 3, s = 4 };

const char* var_name(Var v);

// Immutable symbolic expression. Copies share the underlying node; all
// operations return fresh values, so expressions are safe to pass between
// threads without synchronization.
class Expr {
public:
    enum class Kind : unsigned char {
        Constant,   // exact rational
        Variable,   // x, y, y_x, r, s
        Parameter,  // named symbolic constant (c1, ..., C)
        Sum,        // n-ary
        Product,    // n-ary
        Power,      // base ^ rational exponent
        ExpK,       // exp(arg)
        LnK,        // ln|arg|
    };

    Expr();  // the constant 0

    static Expr constant(Rational v);
    static Expr integer(long long v);
    static Expr variable(Var v);
    static Expr parameter(std::string name);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr pow(Expr base, Rational exponent);
    static Expr exp_of(Expr arg);
    static Expr ln_of(Expr arg);

    Kind kind() const;
    const Rational& const_value() const;   // Kind::Constant
    Var var() const;                       // Kind::Variable
    const std::string& param_name() const; // Kind::Parameter
    const std::vector<Expr>& children() const;  // Sum / Product
    const Expr& base() const;              // Kind::Power
    const Rational& exponent() const;      // Kind::Power
    const Expr& arg() const;               // ExpK / LnK

    bool is_zero() const;  // structurally the constant 0
    bool is_one() const;

    struct Node;  // definition private to expr.cpp

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend int compare(const Expr&, const Expr&);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Total structural order (used for canonical form and map keys).
int compare(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Structural equality of trees as they stand.
bool identical(const Expr& a, const Expr& b);

// Equality of canonical forms.
bool equivalent(const Expr& a, const Expr& b);

// Canonical form: flattened sums/products over a common denominator with
// like terms collected, rational constants folded exactly and kernels
// merged (exp(a)*exp(b) -> exp(a+b)). Idempotent and value-preserving.
Expr normalize(const Expr& e);

// Exact partial derivative, normalized.
Expr diff(const Expr& e, Var v);

// Simultaneous capture-free replacement, then normalize.
Expr substitute(const Expr& e, Var v, const Expr& replacement);
Expr substitute(const Expr& e, const std::map<Var, Expr>& vars,
                const std::map<std::string, Expr>& params = {});

bool mentions(const Expr& e, Var v);
bool mentions_param(const Expr& e, const std::string& name);
bool mentions_any_param(const Expr& e);

// Rendering in the input grammar (re-parseable).
std::string render(const Expr& e);

struct EvalPoint {
    double x = 0.0, y = 0.0, yx = 0.0, r = 0.0, s = 0.0;
    std::map<std::string, double> params;
    // Denominators (and ln arguments) closer to zero than this raise
    // SingularPointError.
    double singular_guard = 1e-12;

    double var_value(Var v) const;
};

// Floating evaluation; ln is evaluated on |arg| (positive-branch policy).
double eval(const Expr& e, const EvalPoint& p);

// Rational coefficient of the leading monomial of normalize(e); 0 for e == 0.
Rational leading_coeff(const Expr& e);

// Distinct denominator factors of the canonical form (the singular locus).
std::vector<Expr> denominator_factors(const Expr& e);

}  // namespace liesym
