#include "liesym/expr.hpp"

#include <sstream>

namespace liesym {

namespace {

std::string render_sum_level(const Expr& e);
std::string render_term_level(const Expr& e);

// Pull a leading minus sign out of a canonical term.
std::pair<bool, Expr> sign_split(const Expr& e) {
    if (e.kind() == Expr::Kind::Constant && e.const_value() < 0)
        return {true, Expr::constant(-e.const_value())};
    if (e.kind() == Expr::Kind::Product) {
        const auto& kids = e.children();
        if (!kids.empty() && kids[0].kind() == Expr::Kind::Constant &&
            kids[0].const_value() < 0) {
            Rational c = -kids[0].const_value();
            std::vector<Expr> rest(kids.begin() + 1, kids.end());
            if (c != 1) rest.insert(rest.begin(), Expr::constant(c));
            return {true, Expr::product(std::move(rest))};
        }
    }
    return {false, e};
}

std::string render_const(const Rational& c) { return rat_to_string(c); }

std::string render_exponent(const Rational& q) {
    if (is_integer(q) && q >= 0) return rat_to_string(q);
    return "(" + rat_to_string(q) + ")";
}

std::string render_pow_base(const Expr& b) {
    switch (b.kind()) {
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter:
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return render_term_level(b);
        case Expr::Kind::Constant:
            if (b.const_value() >= 0 && is_integer(b.const_value()))
                return render_const(b.const_value());
            return "(" + render_const(b.const_value()) + ")";
        default:
            return "(" + render_sum_level(b) + ")";
    }
}

// A single multiplicative factor (no division, positive exponent).
std::string render_factor(const Expr& f) {
    switch (f.kind()) {
        case Expr::Kind::Constant:
            return render_const(f.const_value());
        case Expr::Kind::Variable:
            return var_name(f.var());
        case Expr::Kind::Parameter:
            return f.param_name();
        case Expr::Kind::ExpK:
            return "exp(" + render_sum_level(f.arg()) + ")";
        case Expr::Kind::LnK:
            return "ln(" + render_sum_level(f.arg()) + ")";
        case Expr::Kind::Power:
            return render_pow_base(f.base()) + "^" + render_exponent(f.exponent());
        case Expr::Kind::Sum:
            return "(" + render_sum_level(f) + ")";
        case Expr::Kind::Product:
            return "(" + render_sum_level(f) + ")";
    }
    return "?";
}

std::string render_term_level(const Expr& e) {
    // Split a canonical product into numerator and denominator factors.
    std::vector<Expr> factors;
    if (e.kind() == Expr::Kind::Product) factors = e.children();
    else factors.push_back(e);

    std::vector<std::string> num, den;
    for (const auto& f : factors) {
        if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
            Rational k = -f.exponent();
            if (k == 1) den.push_back(render_pow_base(f.base()));
            else den.push_back(render_pow_base(f.base()) + "^" + render_exponent(k));
        } else {
            num.push_back(render_factor(f));
        }
    }
    std::string num_str;
    if (num.empty()) {
        num_str = "1";
    } else {
        std::ostringstream os;
        for (std::size_t i = 0; i < num.size(); ++i) {
            if (i) os << "*";
            os << num[i];
        }
        num_str = os.str();
    }
    if (den.empty()) return num_str;
    std::ostringstream os;
    os << num_str << "/";
    if (den.size() == 1) {
        os << den[0];
    } else {
        os << "(";
        for (std::size_t i = 0; i < den.size(); ++i) {
            if (i) os << "*";
            os << den[i];
        }
        os << ")";
    }
    return os.str();
}

std::string render_signed_term(const Expr& t, bool first) {
    auto [neg, body] = sign_split(t);
    std::string s = render_term_level(body);
    if (first) return neg ? "-" + s : s;
    return neg ? " - " + s : " + " + s;
}

std::string render_sum_level(const Expr& e) {
    if (e.kind() != Expr::Kind::Sum) return render_signed_term(e, true);
    std::ostringstream os;
    bool first = true;
    for (const auto& t : e.children()) {
        os << render_signed_term(t, first);
        first = false;
    }
    return os.str();
}

}  // namespace

std::string render(const Expr& e) { return render_sum_level(e); }

}  // namespace liesym
