#include "liesym/expr.hpp"

#include "nf.hpp"

#include <cmath>
#include <sstream>

namespace liesym {

const char* var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::y: return "y";
        case Var::yx: return "y_x";
        case Var::r: return "r";
        case Var::s: return "s";
    }
    return "?";
}

struct Expr::Node {
    Kind kind;
    Rational value;           // Constant value / Power exponent
    Var var = Var::x;         // Variable
    std::string name;         // Parameter
    std::vector<Expr> kids;   // Sum/Product children; [0] = Power base or kernel arg
};

namespace {

std::shared_ptr<const Expr::Node> make_node(Expr::Node&& n) {
    return std::make_shared<const Expr::Node>(std::move(n));
}

}  // namespace

Expr::Expr() {
    Node n;
    n.kind = Kind::Constant;
    n.value = 0;
    node_ = make_node(std::move(n));
}

Expr Expr::constant(Rational v) {
    Node n;
    n.kind = Kind::Constant;
    n.value = std::move(v);
    return Expr(make_node(std::move(n)));
}

Expr Expr::integer(long long v) { return constant(Rational(v)); }

Expr Expr::variable(Var v) {
    Node n;
    n.kind = Kind::Variable;
    n.var = v;
    return Expr(make_node(std::move(n)));
}

Expr Expr::parameter(std::string name) {
    Node n;
    n.kind = Kind::Parameter;
    n.name = std::move(name);
    return Expr(make_node(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.empty()) return constant(0);
    if (terms.size() == 1) return terms[0];
    Node n;
    n.kind = Kind::Sum;
    n.kids = std::move(terms);
    return Expr(make_node(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.empty()) return constant(1);
    if (factors.size() == 1) return factors[0];
    Node n;
    n.kind = Kind::Product;
    n.kids = std::move(factors);
    return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr base, Rational exponent) {
    Node n;
    n.kind = Kind::Power;
    n.value = std::move(exponent);
    n.kids.push_back(std::move(base));
    return Expr(make_node(std::move(n)));
}

Expr Expr::exp_of(Expr arg) {
    Node n;
    n.kind = Kind::ExpK;
    n.kids.push_back(std::move(arg));
    return Expr(make_node(std::move(n)));
}

Expr Expr::ln_of(Expr arg) {
    Node n;
    n.kind = Kind::LnK;
    n.kids.push_back(std::move(arg));
    return Expr(make_node(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::const_value() const { return node_->value; }
Var Expr::var() const { return node_->var; }
const std::string& Expr::param_name() const { return node_->name; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }
const Expr& Expr::base() const { return node_->kids[0]; }
const Rational& Expr::exponent() const { return node_->value; }
const Expr& Expr::arg() const { return node_->kids[0]; }

bool Expr::is_zero() const { return node_->kind == Kind::Constant && node_->value == 0; }
bool Expr::is_one() const { return node_->kind == Kind::Constant && node_->value == 1; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
    return Expr::sum({a, Expr::product({Expr::integer(-1), b})});
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
    return Expr::product({a, Expr::pow(b, Rational(-1))});
}
Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }

int compare(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return 0;
    auto rank = [](Expr::Kind k) {
        switch (k) {
            case Expr::Kind::Constant: return 0;
            case Expr::Kind::Variable: return 1;
            case Expr::Kind::Parameter: return 2;
            case Expr::Kind::ExpK: return 3;
            case Expr::Kind::LnK: return 4;
            case Expr::Kind::Power: return 5;
            case Expr::Kind::Product: return 6;
            case Expr::Kind::Sum: return 7;
        }
        return 8;
    };
    int ra = rank(a.kind()), rb = rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    auto cmp_rat = [](const Rational& x, const Rational& y) {
        if (x < y) return -1;
        if (y < x) return 1;
        return 0;
    };
    switch (a.kind()) {
        case Expr::Kind::Constant:
            return cmp_rat(a.const_value(), b.const_value());
        case Expr::Kind::Variable: {
            int va = static_cast<int>(a.var()), vb = static_cast<int>(b.var());
            return va == vb ? 0 : (va < vb ? -1 : 1);
        }
        case Expr::Kind::Parameter:
            return a.param_name().compare(b.param_name()) < 0
                       ? -1
                       : (a.param_name() == b.param_name() ? 0 : 1);
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return compare(a.arg(), b.arg());
        case Expr::Kind::Power: {
            if (int c = compare(a.base(), b.base())) return c;
            return cmp_rat(a.exponent(), b.exponent());
        }
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            const auto& ka = a.children();
            const auto& kb = b.children();
            if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
            for (std::size_t i = 0; i < ka.size(); ++i)
                if (int c = compare(ka[i], kb[i])) return c;
            return 0;
        }
    }
    return 0;
}

bool identical(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

bool equivalent(const Expr& a, const Expr& b) {
    return identical(normalize(a), normalize(b));
}

Expr normalize(const Expr& e) { return nf::tree_from_nf(nf::to_nf(e)); }

namespace {

Expr diff_raw(const Expr& e, Var v) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Parameter:
            return Expr::integer(0);
        case Expr::Kind::Variable:
            return e.var() == v ? Expr::integer(1) : Expr::integer(0);
        case Expr::Kind::Sum: {
            std::vector<Expr> parts;
            for (const auto& k : e.children()) parts.push_back(diff_raw(k, v));
            return Expr::sum(std::move(parts));
        }
        case Expr::Kind::Product: {
            const auto& kids = e.children();
            std::vector<Expr> parts;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                std::vector<Expr> factors = kids;
                factors[i] = diff_raw(kids[i], v);
                parts.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(parts));
        }
        case Expr::Kind::Power: {
            // d(u^p) = p * u^(p-1) * u'
            const Expr& u = e.base();
            const Rational& p = e.exponent();
            return Expr::product({Expr::constant(p), Expr::pow(u, p - 1), diff_raw(u, v)});
        }
        case Expr::Kind::ExpK:
            return Expr::product({e, diff_raw(e.arg(), v)});
        case Expr::Kind::LnK:
            // d ln|u| = u'/u
            return Expr::product({diff_raw(e.arg(), v), Expr::pow(e.arg(), Rational(-1))});
    }
    throw InternalError("unhandled node in diff");
}

Expr subst_raw(const Expr& e, const std::map<Var, Expr>& vars,
               const std::map<std::string, Expr>& params) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return e;
        case Expr::Kind::Variable: {
            auto it = vars.find(e.var());
            return it == vars.end() ? e : it->second;
        }
        case Expr::Kind::Parameter: {
            auto it = params.find(e.param_name());
            return it == params.end() ? e : it->second;
        }
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            std::vector<Expr> kids;
            for (const auto& k : e.children()) kids.push_back(subst_raw(k, vars, params));
            return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(kids))
                                               : Expr::product(std::move(kids));
        }
        case Expr::Kind::Power:
            return Expr::pow(subst_raw(e.base(), vars, params), e.exponent());
        case Expr::Kind::ExpK:
            return Expr::exp_of(subst_raw(e.arg(), vars, params));
        case Expr::Kind::LnK:
            return Expr::ln_of(subst_raw(e.arg(), vars, params));
    }
    throw InternalError("unhandled node in substitute");
}

}  // namespace

Expr diff(const Expr& e, Var v) { return normalize(diff_raw(e, v)); }

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
    return substitute(e, std::map<Var, Expr>{{v, replacement}});
}

Expr substitute(const Expr& e, const std::map<Var, Expr>& vars,
                const std::map<std::string, Expr>& params) {
    return normalize(subst_raw(e, vars, params));
}

bool mentions(const Expr& e, Var v) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Parameter:
            return false;
        case Expr::Kind::Variable:
            return e.var() == v;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            for (const auto& k : e.children())
                if (mentions(k, v)) return true;
            return false;
        }
        case Expr::Kind::Power:
            return mentions(e.base(), v);
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return mentions(e.arg(), v);
    }
    return false;
}

bool mentions_param(const Expr& e, const std::string& name) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return false;
        case Expr::Kind::Parameter:
            return e.param_name() == name;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            for (const auto& k : e.children())
                if (mentions_param(k, name)) return true;
            return false;
        }
        case Expr::Kind::Power:
            return mentions_param(e.base(), name);
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return mentions_param(e.arg(), name);
    }
    return false;
}

bool mentions_any_param(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return false;
        case Expr::Kind::Parameter:
            return true;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            for (const auto& k : e.children())
                if (mentions_any_param(k)) return true;
            return false;
        }
        case Expr::Kind::Power:
            return mentions_any_param(e.base());
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return mentions_any_param(e.arg());
    }
    return false;
}

double EvalPoint::var_value(Var v) const {
    switch (v) {
        case Var::x: return x;
        case Var::y: return y;
        case Var::yx: return yx;
        case Var::r: return r;
        case Var::s: return s;
    }
    return 0.0;
}

double eval(const Expr& e, const EvalPoint& p) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return to_double(e.const_value());
        case Expr::Kind::Variable:
            return p.var_value(e.var());
        case Expr::Kind::Parameter: {
            auto it = p.params.find(e.param_name());
            if (it == p.params.end())
                throw DomainError("unbound parameter " + e.param_name());
            return it->second;
        }
        case Expr::Kind::Sum: {
            double s = 0;
            for (const auto& k : e.children()) s += eval(k, p);
            return s;
        }
        case Expr::Kind::Product: {
            double s = 1;
            for (const auto& k : e.children()) s *= eval(k, p);
            return s;
        }
        case Expr::Kind::Power: {
            double b = eval(e.base(), p);
            const Rational& q = e.exponent();
            if (q < 0 && std::fabs(b) < p.singular_guard)
                throw SingularPointError("denominator within singular guard");
            if (!is_integer(q) && b < 0) {
                if (denominator(q) % 2 == 0)
                    throw DomainError("even root of negative value");
                double m = std::pow(-b, to_double(q));
                return numerator(q) % 2 == 0 ? m : -m;
            }
            return std::pow(b, to_double(q));
        }
        case Expr::Kind::ExpK:
            return std::exp(eval(e.arg(), p));
        case Expr::Kind::LnK: {
            double a = eval(e.arg(), p);
            if (std::fabs(a) < p.singular_guard)
                throw SingularPointError("ln argument within singular guard");
            return std::log(std::fabs(a));
        }
    }
    throw InternalError("unhandled node in eval");
}

Rational leading_coeff(const Expr& e) {
    nf::NF v = nf::to_nf(e);
    if (v.num.empty()) return Rational(0);
    return v.num.rbegin()->second;
}

std::vector<Expr> denominator_factors(const Expr& e) {
    nf::NF v = nf::to_nf(e);
    std::vector<Expr> out;
    for (const auto& [f, k] : v.den) out.push_back(f);
    return out;
}

}  // namespace liesym
