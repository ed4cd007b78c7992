#include "liesym/canonical.hpp"

#include "nf.hpp"

#include <algorithm>

namespace liesym {

namespace {

using Dense = std::vector<Rational>;  // coefficient of v^i at index i

void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Dense& p) { return static_cast<int>(p.size()) - 1; }

Dense dense_mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Dense dense_scale(const Dense& a, const Rational& c) {
    Dense r = a;
    for (auto& q : r) q *= c;
    trim(r);
    return r;
}

Dense dense_add(const Dense& a, const Dense& b) {
    Dense r = a;
    if (r.size() < b.size()) r.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Dense dense_diff(const Dense& a) {
    Dense r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Rational(i));
    trim(r);
    return r;
}

Rational dense_eval(const Dense& p, const Rational& v) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * v + p[i];
    return r;
}

// Quotient and remainder of a / b.
std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
    Dense q;
    trim(a);
    if (b.empty()) throw InternalError("division by zero polynomial");
    while (deg(a) >= deg(b)) {
        int shift = deg(a) - deg(b);
        Rational c = a.back() / b.back();
        if (q.size() < static_cast<std::size_t>(shift) + 1)
            q.resize(shift + 1, Rational(0));
        q[shift] += c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

std::vector<BigInt> divisors_of(BigInt n) {
    if (n < 0) n = -n;
    std::vector<BigInt> d;
    if (n == 0) return d;
    for (BigInt i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
        if (i > 100000) break;  // give up on huge constant terms
    }
    std::sort(d.begin(), d.end());
    return d;
}

struct Factor {
    Dense poly;  // linear (v - a) or irreducible quadratic
    int multiplicity;
};

// Linear and irreducible quadratic factors over Q; throws when a factor of
// degree >= 3 remains.
std::vector<Factor> factor_univariate(Dense p) {
    std::vector<Factor> out;
    auto push = [&](const Dense& f) {
        for (auto& existing : out) {
            if (existing.poly == f) {
                existing.multiplicity++;
                return;
            }
        }
        out.push_back({f, 1});
    };
    trim(p);
    if (deg(p) <= 0) return out;
    // Roots at zero.
    while (!p.empty() && p[0] == 0) {
        push(Dense{Rational(0), Rational(1)});
        p.erase(p.begin());
    }
    // Rational roots a = num/den with num | p0 and den | lead (after
    // clearing coefficient denominators).
    while (deg(p) >= 1) {
        if (deg(p) == 1) {
            push(dense_scale(p, Rational(1) / p.back()));
            return out;
        }
        BigInt clear = 1;
        for (const auto& c : p) clear = lcm(clear, denominator(c));
        std::vector<BigInt> ip;
        for (const auto& c : p) ip.push_back(numerator(c) * (clear / denominator(c)));
        bool found = false;
        for (const BigInt& pn : divisors_of(ip.front())) {
            for (const BigInt& pd : divisors_of(ip.back())) {
                for (int sign = 1; sign >= -1 && !found; sign -= 2) {
                    Rational root(sign * pn, pd);
                    if (dense_eval(p, root) != 0) continue;
                    Dense lin{-root, Rational(1)};
                    auto [q, rem] = dense_divmod(p, lin);
                    if (!rem.empty()) continue;
                    push(lin);
                    p = q;
                    found = true;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (found) continue;
        if (deg(p) == 2) {
            push(dense_scale(p, Rational(1) / p.back()));
            return out;
        }
        throw IntegrationFailedError("denominator has an irreducible factor of degree > 2");
    }
    return out;
}

Expr dense_to_expr(const Dense& p, Var v) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (i == 0) terms.push_back(Expr::constant(p[i]));
        else terms.push_back(Expr::constant(p[i]) * Expr::pow(Expr::variable(v), Rational(i)));
    }
    return Expr::sum(std::move(terms));
}

Expr integrate_dense(const Dense& p, Var v) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        terms.push_back(Expr::constant(p[i] / Rational(i + 1)) *
                        Expr::pow(Expr::variable(v), Rational(i + 1)));
    }
    return Expr::sum(std::move(terms));
}

// nf poly -> dense univariate in v; nullopt when other atoms appear.
std::optional<Dense> to_dense(const nf::Poly& p, Var v) {
    Dense out;
    for (const auto& [m, c] : p) {
        long degree = 0;
        for (const auto& [atom, e] : m) {
            if (atom.kind() == Expr::Kind::Variable && atom.var() == v && is_integer(e))
                degree = static_cast<long>(to_long(e));
            else
                return std::nullopt;
        }
        if (out.size() < static_cast<std::size_t>(degree) + 1)
            out.resize(degree + 1, Rational(0));
        out[degree] += c;
    }
    trim(out);
    return out;
}

// Proper rational part via partial fractions over the factor list.
Expr integrate_proper(const Dense& num, const std::vector<Factor>& factors, Var v) {
    // Unknowns: per linear factor power j, one residue; per quadratic factor
    // power j, two (B v + C).
    struct Slot {
        std::size_t factor;
        int power;
        bool quadratic;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (int j = 1; j <= factors[i].multiplicity; ++j)
            slots.push_back({i, j, deg(factors[i].poly) == 2});

    std::size_t ncols = 0;
    for (const auto& s : slots) ncols += s.quadratic ? 2 : 1;

    Dense denom{Rational(1)};
    for (const auto& f : factors)
        for (int j = 0; j < f.multiplicity; ++j) denom = dense_mul(denom, f.poly);

    int max_deg = deg(denom);  // rows cover v^0 .. v^(max_deg-1)
    RatMat a(max_deg, RatVec(ncols, Rational(0)));
    RatVec b(max_deg, Rational(0));
    for (int i = 0; i < std::min<int>(max_deg, static_cast<int>(num.size())); ++i)
        b[i] = num[i];

    std::size_t col = 0;
    for (const auto& s : slots) {
        // denom / factor^power
        Dense rest = denom;
        for (int j = 0; j < s.power; ++j) {
            auto [q, rem] = dense_divmod(rest, factors[s.factor].poly);
            if (!rem.empty()) throw InternalError("partial fraction division not exact");
            rest = q;
        }
        for (int part = 0; part < (s.quadratic ? 2 : 1); ++part) {
            Dense contrib = rest;
            if (part == 1) contrib = dense_mul(contrib, Dense{Rational(0), Rational(1)});
            for (int i = 0; i <= deg(contrib) && i < max_deg; ++i) a[i][col] = contrib[i];
            ++col;
        }
    }
    auto sol = solve_linear(a, b);
    if (!sol) throw InternalError("partial fraction system inconsistent");

    std::vector<Expr> parts;
    col = 0;
    for (const auto& s : slots) {
        const Dense& f = factors[s.factor].poly;
        Expr fx = dense_to_expr(f, v);
        if (!s.quadratic) {
            Rational A = (*sol)[col++];
            if (A == 0) continue;
            if (s.power == 1) {
                parts.push_back(Expr::constant(A) * Expr::ln_of(fx));
            } else {
                Rational k(1 - s.power);
                parts.push_back(Expr::constant(A / k) * Expr::pow(fx, k));
            }
        } else {
            // Columns per quadratic slot: constant part first, then v part.
            Rational C = (*sol)[col];
            Rational B = (*sol)[col + 1];
            col += 2;
            // (B v + C) = (B / (2 alpha)) q' + (C - B beta / (2 alpha))
            Rational alpha = f[2], beta = f[1];
            Rational lead = B / (2 * alpha);
            Rational rest = C - lead * beta;
            if (rest != 0)
                throw IntegrationFailedError(
                    "irreducible quadratic requires an inverse-tangent term");
            if (lead == 0) continue;
            if (s.power == 1) {
                parts.push_back(Expr::constant(lead) * Expr::ln_of(fx));
            } else {
                Rational k(1 - s.power);
                parts.push_back(Expr::constant(lead / k) * Expr::pow(fx, k));
            }
        }
    }
    return Expr::sum(std::move(parts));
}

}  // namespace

Expr integrate_limited(const Expr& f, Var v) {
    Expr fn = normalize(f);
    for (Var other : {Var::x, Var::y, Var::yx, Var::r, Var::s})
        if (other != v && mentions(fn, other))
            throw IntegrationFailedError("integrand depends on " +
                                         std::string(var_name(other)));
    if (mentions_any_param(fn))
        throw IntegrationFailedError("integrand contains symbolic parameters");

    nf::NF nfv = nf::to_nf(fn);
    if (nfv.num.empty()) return Expr::integer(0);

    if (nfv.den.empty()) {
        // Term-wise: c v^n and c e^(q v) terms.
        std::vector<Expr> parts;
        for (const auto& [m, c] : nfv.num) {
            Rational vdeg = 0;
            std::optional<Rational> kernel_q;
            for (const auto& [atom, e] : m) {
                if (atom.kind() == Expr::Kind::Variable && atom.var() == v) {
                    vdeg = e;
                } else if (atom.kind() == Expr::Kind::ExpK) {
                    nf::NF an = nf::to_nf(atom.arg());
                    if (an.den.empty() && an.num.size() == 1 &&
                        an.num.begin()->first.size() == 1) {
                        const auto& [va, ve] = *an.num.begin()->first.begin();
                        if (va.kind() == Expr::Kind::Variable && va.var() == v && ve == 1) {
                            kernel_q = an.num.begin()->second * e;
                            continue;
                        }
                    }
                    throw IntegrationFailedError("unsupported kernel " + render(atom));
                } else {
                    throw IntegrationFailedError("unsupported factor " + render(atom));
                }
            }
            if (kernel_q) {
                if (vdeg != 0)
                    throw IntegrationFailedError("mixed polynomial-kernel term");
                Expr kern = Expr::exp_of(Expr::constant(*kernel_q) * Expr::variable(v));
                parts.push_back(Expr::constant(c / *kernel_q) * kern);
            } else if (vdeg == -1) {
                parts.push_back(Expr::constant(c) * Expr::ln_of(Expr::variable(v)));
            } else {
                parts.push_back(Expr::constant(c / (vdeg + 1)) *
                                Expr::pow(Expr::variable(v), vdeg + 1));
            }
        }
        return normalize(Expr::sum(std::move(parts)));
    }

    // Rational function: numerator and denominator univariate over Q.
    auto num = to_dense(nfv.num, v);
    if (!num) throw IntegrationFailedError("numerator is not rational in the variable");
    Dense denom{Rational(1)};
    std::vector<Factor> factors;
    for (const auto& [ft, k] : nfv.den) {
        nf::NF fnf = nf::to_nf(ft);
        auto fd = to_dense(fnf.num, v);
        if (!fd) throw IntegrationFailedError("denominator is not rational in the variable");
        for (int j = 0; j < k; ++j) denom = dense_mul(denom, *fd);
        for (const auto& piece : factor_univariate(*fd))
            for (int j = 0; j < piece.multiplicity * k; ++j) {
                bool merged = false;
                for (auto& existing : factors)
                    if (existing.poly == piece.poly) {
                        existing.multiplicity++;
                        merged = true;
                        break;
                    }
                if (!merged) factors.push_back({piece.poly, 1});
            }
    }

    // Fast path: c u'/u over the whole denominator.
    {
        Dense du = dense_diff(denom);
        if (!du.empty() && deg(*num) == deg(du)) {
            Rational c = num->back() / du.back();
            if (dense_add(*num, dense_scale(du, -c)) == Dense{}) {
                return normalize(Expr::constant(c) * Expr::ln_of(dense_to_expr(denom, v)));
            }
        }
    }

    auto [quo, rem] = dense_divmod(*num, denom);
    Expr poly_part = integrate_dense(quo, v);
    Expr proper_part = rem.empty() ? Expr::integer(0) : integrate_proper(rem, factors, v);
    return normalize(poly_part + proper_part);
}

}  // namespace liesym
