#include "liesym/canonical.hpp"

#include "nf.hpp"

#include <algorithm>

namespace liesym {

namespace {

// g == p(x) * q(y) exactly (rank-1 split of the numerator, variable-pure
// denominator factors); nullopt otherwise.
std::optional<std::pair<Expr, Expr>> separate_xy(const Expr& g) {
    nf::NF v = nf::to_nf(g);
    if (v.num.empty()) return std::make_pair(Expr::integer(0), Expr::integer(1));
    nf::DenMap den_x, den_y;
    for (const auto& [f, k] : v.den) {
        bool fx = mentions(f, Var::x), fy = mentions(f, Var::y);
        if (fx && fy) return std::nullopt;
        (fy ? den_y : den_x)[f] = k;
    }
    using nf::Mono;
    using nf::Poly;
    std::map<Mono, Poly, nf::MonoLess> rows;  // x-part -> (y-part -> coeff)
    for (const auto& [m, c] : v.num) {
        Mono mx, my;
        for (const auto& [atom, e] : m) {
            bool ax = mentions(atom, Var::x), ay = mentions(atom, Var::y);
            if (ax && ay) return std::nullopt;
            if (ay) my.emplace(atom, e);
            else mx.emplace(atom, e);
        }
        rows[mx].emplace(my, c);
    }
    const Poly& ref = rows.begin()->second;
    Poly p_poly;  // over x-monomials
    for (const auto& [mx, row] : rows) {
        // row must be lambda * ref
        if (row.size() != ref.size()) return std::nullopt;
        Rational lambda = row.begin()->second / ref.begin()->second;
        auto ia = row.begin();
        auto ib = ref.begin();
        for (; ia != row.end(); ++ia, ++ib) {
            if (nf::MonoLess{}(ia->first, ib->first) || nf::MonoLess{}(ib->first, ia->first))
                return std::nullopt;
            if (ia->second != lambda * ib->second) return std::nullopt;
        }
        p_poly.emplace(mx, lambda);
    }
    // Constants ride with the x factor so q is normalized to leading
    // coefficient 1 (q = y, not y/2, for eta/xi = y/2).
    Rational lead = ref.rbegin()->second;
    Expr p = nf::tree_from_nf(nf::NF{nf::poly_scale(p_poly, lead), den_x});
    Expr q = nf::tree_from_nf(nf::NF{nf::poly_scale(ref, Rational(1) / lead), den_y});
    return std::make_pair(normalize(p), normalize(q));
}

bool contains_ln(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::LnK:
            return true;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            for (const auto& k : e.children())
                if (contains_ln(k)) return true;
            return false;
        }
        case Expr::Kind::Power:
            return contains_ln(e.base());
        case Expr::Kind::ExpK:
            return contains_ln(e.arg());
        default:
            return false;
    }
}

// Solutions v of eq == 0, via degree <= 2 polynomial solving or single
// isolation of the unique v-carrying monomial. Empty when outside the
// catalog.
std::vector<Expr> solve_for_var(const Expr& eq, Var v, int depth = 0) {
    if (depth > 5) return {};
    Expr e = normalize(eq);
    if (!mentions(e, v)) return {};
    nf::NF n = nf::to_nf(e);
    // N/D == 0 iff N == 0 away from the singular locus: solve on the
    // numerator only.
    nf::Poly num = n.num;

    // Polynomial case: v appears only as a bare variable of degree <= 2.
    bool poly_ok = true;
    long max_deg = 0;
    for (const auto& [m, c] : num) {
        for (const auto& [atom, ex] : m) {
            if (atom.kind() == Expr::Kind::Variable && atom.var() == v) {
                if (!is_integer(ex)) poly_ok = false;
                else max_deg = std::max(max_deg, static_cast<long>(to_long(ex)));
            } else if (mentions(atom, v)) {
                poly_ok = false;
            }
        }
    }
    if (poly_ok && max_deg >= 1 && max_deg <= 2) {
        nf::Poly coeff[3];
        for (const auto& [m, c] : num) {
            nf::Mono rest = m;
            long d = 0;
            auto it = rest.find(Expr::variable(v));
            if (it != rest.end()) {
                d = static_cast<long>(to_long(it->second));
                rest.erase(it);
            }
            coeff[d].emplace(rest, c);
        }
        Expr a = nf::tree_from_nf(nf::NF{coeff[2], {}});
        Expr b = nf::tree_from_nf(nf::NF{coeff[1], {}});
        Expr c0 = nf::tree_from_nf(nf::NF{coeff[0], {}});
        if (max_deg == 1) return {normalize(-c0 / b)};
        Expr disc = normalize(b * b - Expr::integer(4) * a * c0);
        Expr root = Expr::pow(disc, Rational(1, 2));
        Expr two_a = Expr::integer(2) * a;
        return {normalize((-b + root) / two_a), normalize((-b - root) / two_a)};
    }

    // Single isolation: exactly one monomial carries v.
    std::optional<std::pair<nf::Mono, Rational>> carrier;
    nf::Poly rest_terms;
    for (const auto& [m, c] : num) {
        bool has_v = false;
        for (const auto& [atom, ex] : m)
            if (mentions(atom, v)) has_v = true;
        if (has_v) {
            if (carrier) return {};  // more than one v-carrying monomial
            carrier = {m, c};
        } else {
            rest_terms.emplace(m, c);
        }
    }
    if (!carrier) return {};
    nf::Mono v_part, other_part;
    for (const auto& [atom, ex] : carrier->first) {
        if (mentions(atom, v)) v_part.emplace(atom, ex);
        else other_part.emplace(atom, ex);
    }
    if (v_part.size() != 1) return {};
    nf::Poly opoly;
    opoly.emplace(other_part, carrier->second);
    Expr denom_tree = nf::tree_from_nf(nf::NF{opoly, {}});
    Expr rhs = normalize(-nf::tree_from_nf(nf::NF{rest_terms, {}}) / denom_tree);

    const Expr& atom = v_part.begin()->first;
    const Rational& ex = v_part.begin()->second;
    if (atom.kind() == Expr::Kind::Variable && atom.var() == v) {
        // v^ex = rhs
        Rational inv = Rational(1) / ex;
        Expr principal = normalize(Expr::pow(rhs, inv));
        if (is_integer(ex) && numerator(ex) % 2 == 0)
            return {principal, normalize(-principal)};
        return {principal};
    }
    if (atom.kind() == Expr::Kind::LnK && ex == 1) {
        // ln|u| = rhs -> u = exp(rhs), positive branch
        Expr target = Expr::exp_of(rhs);
        return solve_for_var(atom.arg() - target, v, depth + 1);
    }
    if (atom.kind() == Expr::Kind::ExpK && ex == 1) {
        // exp(u) = rhs -> u = ln(rhs)
        Expr target = Expr::ln_of(rhs);
        return solve_for_var(atom.arg() - target, v, depth + 1);
    }
    if (ex != 0) {
        // compound^ex = rhs -> compound = rhs^(1/ex)
        Expr target = Expr::pow(rhs, Rational(1) / ex);
        return solve_for_var(atom - target, v, depth + 1);
    }
    return {};
}

// Invert T(v) == rhs for v, principal branch.
std::optional<Expr> invert_for(const Expr& T, Var v, const Expr& rhs) {
    std::vector<Expr> sols = solve_for_var(T - rhs, v);
    if (sols.empty()) return std::nullopt;
    return sols.front();
}

void check_pair(const TangentField& f, CanonicalPair& pair) {
    Expr i1 = normalize(f.xi * diff(pair.r, Var::x) + f.eta * diff(pair.r, Var::y));
    Expr i2 = normalize(f.xi * diff(pair.s, Var::x) + f.eta * diff(pair.s, Var::y));
    if (!i1.is_zero() || !i2.is_one())
        throw InternalError("canonical pair identities failed: got " + render(i1) +
                            " and " + render(i2));
}

}  // namespace

CanonicalPair canonical_coords(const TangentField& field) {
    Expr xi = normalize(field.xi), eta = normalize(field.eta);
    Expr x = Expr::variable(Var::x), y = Expr::variable(Var::y);
    Expr rv = Expr::variable(Var::r), sv = Expr::variable(Var::s);
    CanonicalPair pair;

    if (xi.is_zero() && eta.is_zero())
        throw InternalError("zero field has no canonical coordinates");

    if (xi.is_zero()) {
        // r = x, s = int dy / eta at fixed x.
        auto sep = separate_xy(normalize(Expr::integer(1) / eta));
        if (!sep) throw NotSeparableError("1/eta is not separable as p(x) q(y)");
        Expr sy = integrate_limited(sep->second, Var::y);
        pair.r = x;
        pair.s = normalize(sep->first * sy);
        pair.inverse_x = rv;
        Expr s_in_y = substitute(pair.s, Var::x, rv);
        pair.inverse_y = invert_for(s_in_y, Var::y, sv);
    } else if (eta.is_zero()) {
        // r = y, s = int dx / xi at fixed y.
        auto sep = separate_xy(normalize(Expr::integer(1) / xi));
        if (!sep) throw NotSeparableError("1/xi is not separable as p(x) q(y)");
        Expr sx = integrate_limited(sep->first, Var::x);
        pair.r = y;
        pair.s = normalize(sep->second * sx);
        pair.inverse_y = rv;
        Expr s_in_x = substitute(pair.s, Var::y, rv);
        pair.inverse_x = invert_for(s_in_x, Var::x, sv);
    } else {
        if (mentions(xi, Var::y))
            throw NotSeparableError("xi depends on y; outside the catalog");
        auto sep = separate_xy(normalize(eta / xi));
        if (!sep) throw NotSeparableError("eta/xi is not separable as p(x) q(y)");
        const Expr& p = sep->first;
        const Expr& q = sep->second;
        // First integral of dy/dx = p q: int dy/q - int p dx.
        Expr U = integrate_limited(normalize(Expr::integer(1) / q), Var::y);
        Expr W = integrate_limited(p, Var::x);
        Expr phi = normalize(U - W);
        Expr r_expr = contains_ln(phi) ? normalize(Expr::exp_of(phi)) : phi;
        Rational lead = leading_coeff(r_expr);
        if (lead != 0 && lead != 1)
            r_expr = normalize(Expr::constant(Rational(1) / lead) * r_expr);
        pair.r = r_expr;
        pair.s = integrate_limited(normalize(Expr::integer(1) / xi), Var::x);
        pair.inverse_x = invert_for(pair.s, Var::x, sv);
        if (pair.inverse_x) {
            Expr r_in_y = substitute(pair.r, Var::x, *pair.inverse_x);
            pair.inverse_y = invert_for(r_in_y, Var::y, rv);
        }
    }
    check_pair(TangentField{xi, eta}, pair);
    return pair;
}

Expr canonical_ode(const Ode& ode, const CanonicalPair& pair) {
    Expr denom = normalize(diff(pair.r, Var::x) + ode.h * diff(pair.r, Var::y));
    if (denom.is_zero())
        throw DivisionByZeroLocusError("r is constant along the flow: ds/dr undefined");
    Expr raw = normalize((diff(pair.s, Var::x) + ode.h * diff(pair.s, Var::y)) / denom);
    std::map<Var, Expr> subs;
    if (mentions(raw, Var::x)) {
        if (!pair.inverse_x)
            throw NotAutonomousError("no inverse map for x to rewrite the quotient in r");
        subs.emplace(Var::x, *pair.inverse_x);
    }
    if (mentions(raw, Var::y)) {
        if (!pair.inverse_y)
            throw NotAutonomousError("no inverse map for y to rewrite the quotient in r");
        subs.emplace(Var::y, *pair.inverse_y);
    }
    if (subs.empty()) return raw;
    Expr g = substitute(raw, subs);
    if (mentions(g, Var::s))
        throw NotAutonomousError("quotient still depends on s: " + render(g));
    if (mentions(g, Var::x) || mentions(g, Var::y))
        throw InternalError("incomplete rewrite of the canonical quotient");
    return g;
}

namespace {

int count_param(const Expr& e, const std::string& name) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return 0;
        case Expr::Kind::Parameter:
            return e.param_name() == name ? 1 : 0;
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            int n = 0;
            for (const auto& k : e.children()) n += count_param(k, name);
            return n;
        }
        case Expr::Kind::Power:
            return count_param(e.base(), name);
        case Expr::Kind::ExpK:
        case Expr::Kind::LnK:
            return count_param(e.arg(), name);
    }
    return 0;
}

// Pure constant-parameter term c0 * C; reports the sign of c0.
std::optional<int> pure_c_sign(const Expr& t, const std::string& name) {
    if (t.kind() == Expr::Kind::Parameter && t.param_name() == name) return 1;
    if (t.kind() == Expr::Kind::Product) {
        bool saw_c = false;
        int sign = 1;
        for (const auto& k : t.children()) {
            if (k.kind() == Expr::Kind::Parameter && k.param_name() == name) {
                saw_c = true;
            } else if (k.kind() == Expr::Kind::Constant) {
                if (k.const_value() < 0) sign = -sign;
            } else {
                return std::nullopt;
            }
        }
        if (saw_c) return sign;
    }
    return std::nullopt;
}

Expr absorb_walk(const Expr& e, const std::string& name) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter:
            return e;
        case Expr::Kind::ExpK: {
            Expr arg = absorb_walk(e.arg(), name);
            if (mentions_param(arg, name)) {
                // exp(a*C + rest) -> C * exp(rest): a fresh positive constant.
                nf::NF v = nf::to_nf(arg);
                nf::Poly c_terms, rest;
                bool clean = true;
                for (const auto& [m, c] : v.num) {
                    bool pure_c = m.size() == 1 &&
                                  m.begin()->first.kind() == Expr::Kind::Parameter &&
                                  m.begin()->first.param_name() == name &&
                                  m.begin()->second == 1;
                    bool has_c = false;
                    for (const auto& [atom, ex] : m)
                        if (mentions_param(atom, name)) has_c = true;
                    if (pure_c) c_terms.emplace(m, c);
                    else if (has_c) clean = false;
                    else rest.emplace(m, c);
                }
                for (const auto& [f, k] : v.den)
                    if (mentions_param(f, name)) clean = false;
                if (clean && c_terms.size() == 1) {
                    Expr rest_tree = nf::tree_from_nf(nf::NF{rest, v.den});
                    return Expr::parameter(name) * Expr::exp_of(rest_tree);
                }
            }
            return Expr::exp_of(arg);
        }
        case Expr::Kind::LnK:
            return Expr::ln_of(absorb_walk(e.arg(), name));
        case Expr::Kind::Power:
            return Expr::pow(absorb_walk(e.base(), name), e.exponent());
        case Expr::Kind::Sum: {
            std::vector<Expr> kids;
            int pure_at = -1;
            int pure_sign = 1;
            for (const auto& k : e.children()) {
                Expr k2 = absorb_walk(k, name);
                if (pure_at < 0) {
                    if (auto sign = pure_c_sign(k2, name)) {
                        pure_at = static_cast<int>(kids.size());
                        pure_sign = *sign;
                    }
                }
                kids.push_back(std::move(k2));
            }
            if (pure_at >= 0) {
                // c0*C + d + rest -> (+-)C + rest: magnitude and additive
                // shifts fold into the arbitrary constant, signs stay.
                std::vector<Expr> out;
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (static_cast<int>(i) == pure_at) {
                        Expr c = Expr::parameter(name);
                        out.push_back(pure_sign < 0 ? -c : c);
                    } else if (kids[i].kind() == Expr::Kind::Constant) {
                        continue;
                    } else {
                        out.push_back(kids[i]);
                    }
                }
                return Expr::sum(std::move(out));
            }
            return Expr::sum(std::move(kids));
        }
        case Expr::Kind::Product: {
            std::vector<Expr> kids;
            bool saw_c = false;
            for (const auto& k : e.children()) {
                Expr k2 = absorb_walk(k, name);
                if (k2.kind() == Expr::Kind::Parameter && k2.param_name() == name) saw_c = true;
                kids.push_back(std::move(k2));
            }
            if (saw_c) {
                // c0 * C * rest -> sign(c0) * C * rest
                std::vector<Expr> out;
                int sign = 1;
                for (const auto& k : kids) {
                    if (k.kind() == Expr::Kind::Constant) {
                        if (k.const_value() < 0) sign = -sign;
                        continue;
                    }
                    out.push_back(k);
                }
                if (sign < 0) out.insert(out.begin(), Expr::integer(-1));
                return Expr::product(std::move(out));
            }
            return Expr::product(std::move(kids));
        }
    }
    return e;
}

Expr absorb_constant(const Expr& e, const std::string& name) {
    Expr t = normalize(e);
    for (int i = 0; i < 3; ++i) {
        if (count_param(t, name) != 1) return t;
        Expr next = normalize(absorb_walk(t, name));
        if (identical(next, t)) return t;
        t = next;
    }
    return t;
}

}  // namespace

SolutionForm back_substitute(const CanonicalPair& pair, const Expr& S, const Ode&) {
    Expr C = Expr::parameter("C");
    Expr s_of_r = substitute(S, Var::r, pair.r);
    Expr relation = normalize(pair.s - s_of_r - C);

    std::vector<Expr> branches = solve_for_var(relation, Var::y);
    SolutionForm sol;
    if (!branches.empty()) {
        sol.kind = SolutionForm::Kind::Explicit;
        for (const auto& b : branches) sol.branches.push_back(absorb_constant(b, "C"));
        return sol;
    }
    sol.kind = SolutionForm::Kind::Implicit;
    sol.implicit_relation = absorb_constant(relation, "C");
    return sol;
}

}  // namespace liesym
