#include "liesym/laurent.hpp"

#include "nf.hpp"

namespace liesym {

namespace {

// exp argument must be q*x; returns q.
Rational kernel_multiple(const Expr& arg) {
    nf::NF a = nf::to_nf(arg);
    if (!a.den.empty() || a.num.size() != 1)
        throw NonLaurentError("exp kernel argument is not a multiple of x: " + render(arg));
    const auto& [m, c] = *a.num.begin();
    if (m.size() != 1) throw NonLaurentError("exp kernel argument is not a multiple of x");
    const auto& [atom, e] = *m.begin();
    if (atom.kind() != Expr::Kind::Variable || atom.var() != Var::x || e != 1)
        throw NonLaurentError("exp kernel argument is not a multiple of x");
    return c;
}

long to_int_exponent(const Rational& e, const char* what) {
    if (!is_integer(e))
        throw NonLaurentError(std::string("fractional power of ") + what);
    return static_cast<long>(to_long(e));
}

}  // namespace

LaurentPoly as_laurent(const Expr& e) {
    nf::NF v = nf::to_nf(e);
    long dx = 0, dy = 0;
    for (const auto& [f, k] : v.den) {
        if (f.kind() == Expr::Kind::Variable && f.var() == Var::x) dx += k;
        else if (f.kind() == Expr::Kind::Variable && f.var() == Var::y) dy += k;
        else throw NonLaurentError("non-monomial denominator: " + render(f));
    }
    std::map<LaurentKey, nf::Poly> acc;
    for (const auto& [m, c] : v.num) {
        LaurentKey key;
        key.x = -dx;
        key.y = -dy;
        nf::Mono coeff_mono;
        for (const auto& [atom, exp] : m) {
            switch (atom.kind()) {
                case Expr::Kind::Variable:
                    if (atom.var() == Var::x) key.x += to_int_exponent(exp, "x");
                    else if (atom.var() == Var::y) key.y += to_int_exponent(exp, "y");
                    else throw NonLaurentError(std::string("unexpected variable ") + var_name(atom.var()));
                    break;
                case Expr::Kind::Parameter:
                    coeff_mono.emplace(atom, exp);
                    break;
                case Expr::Kind::ExpK:
                    key.k += kernel_multiple(atom.arg());
                    break;
                default:
                    throw NonLaurentError("non-Laurent factor: " + render(atom));
            }
        }
        nf::Poly term;
        term.emplace(std::move(coeff_mono), c);
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, std::move(term));
        else it->second = nf::poly_add(it->second, term);
    }
    LaurentPoly out;
    for (auto& [key, poly] : acc) {
        if (poly.empty()) continue;
        out.terms.emplace(key, nf::tree_from_nf(nf::NF{poly, {}}));
    }
    return out;
}

Expr to_expr(const LaurentPoly& p) {
    std::vector<Expr> terms;
    for (const auto& [key, coeff] : p.terms) {
        std::vector<Expr> factors{coeff};
        if (key.x != 0) factors.push_back(Expr::pow(Expr::variable(Var::x), Rational(key.x)));
        if (key.y != 0) factors.push_back(Expr::pow(Expr::variable(Var::y), Rational(key.y)));
        if (key.k != 0)
            factors.push_back(Expr::exp_of(Expr::constant(key.k) * Expr::variable(Var::x)));
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

}  // namespace liesym
