#include "nf.hpp"

#include <algorithm>
#include <cassert>

namespace liesym::nf {

namespace {

int cmp_rat(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

bool is_exp_atom(const Expr& a) { return a.kind() == Expr::Kind::ExpK; }
bool is_const_atom(const Expr& a) { return a.kind() == Expr::Kind::Constant; }
bool is_compound_atom(const Expr& a) {
    // Multi-term polynomial base (fractional powers / denominator factors).
    return a.kind() == Expr::Kind::Sum || a.kind() == Expr::Kind::Product;
}

int mono_cmp(const Mono& a, const Mono& b);

}  // namespace

Rational mono_var_degree(const Mono& m, Var v) {
    auto it = m.find(Expr::variable(v));
    return it == m.end() ? Rational(0) : it->second;
}

Rational mono_kernel_degree(const Mono& m) {
    for (const auto& [atom, e] : m) {
        if (!is_exp_atom(atom)) continue;
        const Expr& arg = atom.arg();
        if (arg.kind() == Expr::Kind::Variable && arg.var() == Var::x) return e;
        if (arg.kind() == Expr::Kind::Product && arg.children().size() == 2 &&
            arg.children()[0].kind() == Expr::Kind::Constant &&
            arg.children()[1].kind() == Expr::Kind::Variable &&
            arg.children()[1].var() == Var::x) {
            return arg.children()[0].const_value() * e;
        }
    }
    return Rational(0);
}

namespace {

int mono_cmp(const Mono& a, const Mono& b) {
    // Lexicographic on (x-degree, y-degree, kernel degree), then a
    // structural tiebreak over the remaining atoms.
    if (int c = cmp_rat(mono_var_degree(a, Var::x), mono_var_degree(b, Var::x))) return c;
    if (int c = cmp_rat(mono_var_degree(a, Var::y), mono_var_degree(b, Var::y))) return c;
    if (int c = cmp_rat(mono_kernel_degree(a), mono_kernel_degree(b))) return c;
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (int c = compare(ia->first, ib->first)) return c;
        if (int c = cmp_rat(ia->second, ib->second)) return c;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

}  // namespace

bool MonoLess::operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) < 0; }

Poly poly_one() { return poly_const(1); }

Poly poly_const(const Rational& c) {
    Poly p;
    if (c != 0) p.emplace(Mono{}, c);
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b) {
        auto it = r.find(m);
        if (it == r.end()) {
            r.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) r.erase(it);
        }
    }
    return r;
}

Poly poly_neg(const Poly& a) {
    Poly r;
    for (const auto& [m, c] : a) r.emplace(m, -c);
    return r;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, co] : a) r.emplace(m, co * c);
    return r;
}

namespace {

// Add two exp-kernel argument trees (both canonical), returning the
// canonical tree of the sum, or nullopt when it vanishes.
std::optional<Expr> add_exp_args(const Expr& u, const Expr& v) {
    NF s = nf_add(to_nf(u), to_nf(v));
    if (s.is_zero()) return std::nullopt;
    return tree_from_nf(s);
}

std::optional<Expr> scale_exp_arg(const Expr& u, const Rational& c) {
    if (c == 0) return std::nullopt;
    NF s = to_nf(u);
    s.num = poly_scale(s.num, c);
    if (s.is_zero()) return std::nullopt;
    return tree_from_nf(s);
}

// Multiply out one pairwise monomial product. Kernel arguments merge; a
// compound atom whose exponent becomes a positive integer is expanded, so
// the result is a polynomial in general.
Poly mono_mul(const Mono& ma, const Rational& ca, const Mono& mb, const Rational& cb) {
    Rational coeff = ca * cb;
    Mono merged;
    std::optional<Expr> exp_arg;
    auto take = [&](const Expr& atom, const Rational& e) {
        if (is_exp_atom(atom)) {
            std::optional<Expr> scaled = e == 1 ? std::optional<Expr>(atom.arg())
                                                : scale_exp_arg(atom.arg(), e);
            if (!scaled) return;
            exp_arg = exp_arg ? add_exp_args(*exp_arg, *scaled) : scaled;
            return;
        }
        auto it = merged.find(atom);
        if (it == merged.end()) {
            merged.emplace(atom, e);
        } else {
            it->second += e;
            if (it->second == 0) merged.erase(it);
        }
    };
    for (const auto& [atom, e] : ma) take(atom, e);
    for (const auto& [atom, e] : mb) take(atom, e);

    // Fold integer parts of constant and compound atom powers so fractional
    // exponents stay in (0, 1) regardless of how products were associated.
    std::vector<std::pair<Expr, long long>> expansions;
    for (auto it = merged.begin(); it != merged.end();) {
        const Expr& atom = it->first;
        const Rational& e = it->second;
        if (is_const_atom(atom)) {
            BigInt fl = rat_floor(e);
            if (fl != 0) {
                coeff *= rat_pow(atom.const_value(), fl.convert_to<long long>());
                Rational frac = e - Rational(fl);
                if (frac == 0) {
                    it = merged.erase(it);
                    continue;
                }
                it->second = frac;
            }
            ++it;
        } else if (is_compound_atom(atom) && e >= 1) {
            BigInt fl = rat_floor(e);
            expansions.emplace_back(atom, fl.convert_to<long long>());
            Rational frac = e - Rational(fl);
            if (frac == 0) {
                it = merged.erase(it);
            } else {
                it->second = frac;
                ++it;
            }
        } else {
            ++it;
        }
    }
    if (exp_arg) merged.emplace(Expr::exp_of(*exp_arg), Rational(1));

    Poly result;
    result.emplace(std::move(merged), coeff);
    for (const auto& [atom, n] : expansions) {
        NF base = to_nf(atom);
        assert(base.den.empty());
        result = poly_mul(result, poly_pow(base.num, n));
    }
    return result;
}

}  // namespace

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) r = poly_add(r, mono_mul(ma, ca, mb, cb));
    return r;
}

Poly poly_pow(const Poly& a, long long n) {
    assert(n >= 0);
    Poly r = poly_one();
    for (long long i = 0; i < n; ++i) r = poly_mul(r, a);
    return r;
}

namespace {

// Quotient of two monomials, nullopt when not divisible. Exp kernels are
// units: their arguments simply subtract.
std::optional<std::pair<Mono, Rational>> mono_div(const Mono& n, const Rational& cn,
                                                  const Mono& d, const Rational& cd) {
    Mono q = n;
    std::optional<Expr> exp_arg;
    for (auto it = q.begin(); it != q.end();) {
        if (is_exp_atom(it->first)) {
            exp_arg = it->first.arg();
            it = q.erase(it);
        } else {
            ++it;
        }
    }
    for (const auto& [atom, e] : d) {
        if (is_exp_atom(atom)) {
            std::optional<Expr> neg = scale_exp_arg(atom.arg(), -e);
            if (neg) exp_arg = exp_arg ? add_exp_args(*exp_arg, *neg) : neg;
            else if (!exp_arg) { /* arg vanished; nothing to do */ }
            continue;
        }
        auto it = q.find(atom);
        Rational have = it == q.end() ? Rational(0) : it->second;
        Rational left = have - e;
        if (left < 0) return std::nullopt;
        if (it != q.end()) q.erase(it);
        if (left != 0) q.emplace(atom, left);
    }
    if (exp_arg) q.emplace(Expr::exp_of(*exp_arg), Rational(1));
    return std::make_pair(std::move(q), cn / cd);
}

}  // namespace

std::optional<Poly> try_exact_divide(const Poly& n, const Poly& d) {
    if (d.empty()) return std::nullopt;
    Poly rem = n, quot;
    auto lead_d = *d.rbegin();
    while (!rem.empty()) {
        auto lead_n = *rem.rbegin();
        auto t = mono_div(lead_n.first, lead_n.second, lead_d.first, lead_d.second);
        if (!t) return std::nullopt;
        Poly tp;
        tp.emplace(t->first, t->second);
        quot = poly_add(quot, tp);
        rem = poly_add(rem, poly_neg(poly_mul(tp, d)));
    }
    return quot;
}

namespace {

Rational rational_content(const Poly& p) {
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : p) {
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    if (num_gcd == 0) return Rational(1);
    Rational content(num_gcd, den_lcm);
    if (p.rbegin()->second < 0) content = -content;
    return content;
}

}  // namespace

Factored factor_normalize(const Poly& p) {
    Factored f;
    f.scalar = 1;
    if (p.empty()) {
        f.scalar = 0;
        f.primitive = poly_one();
        return f;
    }
    // Atom-wise minimum exponents shared by every monomial.
    Mono gcd_m = p.begin()->first;
    for (auto it = gcd_m.begin(); it != gcd_m.end();) {
        if (is_exp_atom(it->first)) it = gcd_m.erase(it);
        else ++it;
    }
    for (const auto& [m, c] : p) {
        for (auto it = gcd_m.begin(); it != gcd_m.end();) {
            auto jt = m.find(it->first);
            if (jt == m.end()) {
                it = gcd_m.erase(it);
            } else {
                if (jt->second < it->second) it->second = jt->second;
                ++it;
            }
        }
        if (gcd_m.empty()) break;
    }
    // Common kernel content: every exp argument must be a rational multiple
    // of one direction; extract the minimal multiple.
    {
        std::vector<Rational> multiples;
        Poly direction;
        bool ok = true;
        for (const auto& [m, c] : p) {
            std::optional<Expr> arg;
            for (const auto& [atom, e] : m)
                if (is_exp_atom(atom)) arg = atom.arg();
            if (!arg) {
                multiples.emplace_back(0);
                continue;
            }
            NF an = to_nf(*arg);
            if (!an.den.empty() || an.num.empty()) { ok = false; break; }
            if (direction.empty()) {
                Rational c0 = an.num.rbegin()->second;
                direction = poly_scale(an.num, Rational(1) / c0);
                multiples.push_back(c0);
                continue;
            }
            // an.num must equal q * direction exactly.
            Rational q = an.num.rbegin()->second / direction.rbegin()->second;
            if (poly_add(an.num, poly_neg(poly_scale(direction, q))).empty())
                multiples.push_back(q);
            else { ok = false; break; }
        }
        if (ok && !direction.empty()) {
            Rational qmin = multiples[0];
            for (const auto& q : multiples) qmin = std::min(qmin, q);
            if (qmin != 0) {
                NF darg{poly_scale(direction, qmin), {}};
                gcd_m.emplace(Expr::exp_of(tree_from_nf(darg)), Rational(1));
            }
        }
    }
    Poly reduced;
    for (const auto& [m, c] : p) {
        auto q = mono_div(m, c, gcd_m, Rational(1));
        assert(q);
        reduced.emplace(q->first, q->second);
    }
    f.mono_gcd = gcd_m;
    f.scalar = rational_content(reduced);
    f.primitive = poly_scale(reduced, Rational(1) / f.scalar);
    return f;
}

namespace {

// Univariate view of a polynomial over a single bare variable atom.
std::optional<std::pair<Expr, std::vector<Rational>>> as_univariate(const Poly& p) {
    std::optional<Expr> var;
    std::vector<Rational> dense;
    for (const auto& [m, c] : p) {
        long degree = 0;
        for (const auto& [atom, e] : m) {
            if (atom.kind() != Expr::Kind::Variable || !is_integer(e) || e < 0)
                return std::nullopt;
            if (var && !identical(*var, atom)) return std::nullopt;
            var = atom;
            degree = static_cast<long>(to_long(e));
        }
        if (dense.size() < static_cast<std::size_t>(degree) + 1)
            dense.resize(degree + 1, Rational(0));
        dense[degree] += c;
    }
    if (!var) return std::nullopt;
    return std::make_pair(*var, std::move(dense));
}

std::vector<BigInt> small_divisors(BigInt n) {
    if (n < 0) n = -n;
    std::vector<BigInt> d;
    if (n == 0) return d;
    for (BigInt i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
        if (i > 100000) break;
    }
    return d;
}

Rational dense_eval_at(const std::vector<Rational>& p, const Rational& v) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * v + p[i];
    return r;
}

bool poly_equal(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib)
        if (mono_cmp(ia->first, ib->first) != 0 || ia->second != ib->second)
            return false;
    return true;
}

// p == scalar * prod(parts^mult); univariate inputs split into rational-root
// linear factors plus an unfactored remainder, everything else stays whole.
struct PrimSplit {
    Rational scalar = 1;
    std::vector<std::pair<Poly, int>> parts;
};

PrimSplit split_primitive(const Poly& p) {
    PrimSplit out;
    auto uni = as_univariate(p);
    if (!uni || uni->second.size() <= 2) {
        out.parts.emplace_back(p, 1);
        return out;
    }
    const Expr var = uni->first;
    std::vector<Rational> dense = uni->second;
    auto poly_of_dense = [&](const std::vector<Rational>& d) {
        Poly q;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            Mono m;
            if (i > 0) m.emplace(var, Rational(i));
            q.emplace(std::move(m), d[i]);
        }
        return q;
    };
    auto push = [&](const Poly& piece) {
        Factored f = factor_normalize(piece);
        out.scalar *= f.scalar;
        Poly prim = f.primitive;
        for (const auto& [atom, e] : f.mono_gcd) {
            Mono m;
            m.emplace(atom, e);
            Poly mp;
            mp.emplace(std::move(m), Rational(1));
            bool merged = false;
            for (auto& [part, k] : out.parts)
                if (poly_equal(part, mp)) { ++k; merged = true; break; }
            if (!merged) out.parts.emplace_back(mp, 1);
        }
        bool merged = false;
        if (!(prim.size() == 1 && prim.begin()->first.empty())) {
            for (auto& [part, k] : out.parts)
                if (poly_equal(part, prim)) { ++k; merged = true; break; }
            if (!merged) out.parts.emplace_back(prim, 1);
        }
    };
    // Peel rational roots; keep the remainder whole.
    while (dense.size() > 2) {
        BigInt clear = 1;
        for (const auto& c : dense) clear = lcm(clear, denominator(c));
        std::vector<BigInt> ip;
        for (const auto& c : dense) ip.push_back(numerator(c) * (clear / denominator(c)));
        bool found = false;
        std::vector<BigInt> cands = small_divisors(ip.front());
        if (ip.front() == 0) {
            // root at zero
            Poly lin;
            Mono m;
            m.emplace(var, Rational(1));
            lin.emplace(std::move(m), Rational(1));
            push(lin);
            dense.erase(dense.begin());
            continue;
        }
        for (const BigInt& pn : cands) {
            for (const BigInt& pd : small_divisors(ip.back())) {
                for (int sign = 1; sign >= -1 && !found; sign -= 2) {
                    Rational root(sign * pn, pd);
                    if (dense_eval_at(dense, root) != 0) continue;
                    // synthetic division by (v - root)
                    std::vector<Rational> q(dense.size() - 1, Rational(0));
                    Rational carry = 0;
                    for (std::size_t i = dense.size(); i-- > 1;) {
                        q[i - 1] = dense[i] + carry;
                        carry = q[i - 1] * root;
                    }
                    Poly lin;
                    Mono m;
                    m.emplace(var, Rational(1));
                    lin.emplace(std::move(m), Rational(1));
                    Mono cm;
                    lin.emplace(std::move(cm), -root);
                    push(lin);
                    dense = std::move(q);
                    found = true;
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    push(poly_of_dense(dense));
    return out;
}

}  // namespace

// Insert primitive^mult into the denominator, splitting off irreducible
// pieces where rational-root factoring applies.
static void den_insert(NF& a, const Poly& primitive, int mult) {
    PrimSplit split = split_primitive(primitive);
    if (split.scalar != 1)
        a.num = poly_scale(a.num, rat_pow(Rational(1) / split.scalar, mult));
    for (const auto& [part, k] : split.parts) {
        if (part.size() == 1) {
            // single-monomial piece: push atoms individually
            const Mono& m = part.begin()->first;
            Rational c = part.begin()->second;
            if (c != 1) a.num = poly_scale(a.num, rat_pow(Rational(1) / c, k * mult));
            for (const auto& [atom, e] : m) {
                if (!is_integer(e)) {
                    // fractional leftover cannot be a denominator entry
                    Mono fm;
                    fm.emplace(atom, e);
                    Poly fp;
                    fp.emplace(std::move(fm), Rational(1));
                    a.den[tree_from_nf(NF{fp, {}})] += k * mult;
                } else {
                    a.den[atom] += static_cast<int>(to_long(e)) * k * mult;
                }
            }
        } else {
            a.den[tree_from_nf(NF{part, {}})] += k * mult;
        }
    }
}

NF nf_zero() { return NF{}; }

NF nf_one() { return NF{poly_one(), {}}; }

NF nf_const(const Rational& c) { return NF{poly_const(c), {}}; }

NF nf_atom(const Expr& atom_tree) {
    Mono m;
    m.emplace(atom_tree, Rational(1));
    Poly p;
    p.emplace(std::move(m), Rational(1));
    return NF{std::move(p), {}};
}

namespace {

Poly expand_factors(const DenMap& den) {
    Poly r = poly_one();
    for (const auto& [f, k] : den) {
        NF fn = to_nf(f);
        assert(fn.den.empty());
        r = poly_mul(r, poly_pow(fn.num, k));
    }
    return r;
}

}  // namespace

void cancel(NF& a) {
    if (a.num.empty()) {
        a.den.clear();
        return;
    }
    for (auto it = a.den.begin(); it != a.den.end();) {
        NF fn = to_nf(it->first);
        bool erased = false;
        while (it->second > 0) {
            auto q = try_exact_divide(a.num, fn.num);
            if (!q) break;
            a.num = *q;
            if (--it->second == 0) {
                it = a.den.erase(it);
                erased = true;
                break;
            }
        }
        if (!erased) ++it;
        if (a.num.empty()) {  // cancelled to zero only if num was zero; defensive
            a.den.clear();
            return;
        }
    }
}

NF nf_add(const NF& a, const NF& b) {
    NF r;
    DenMap den;
    for (const auto& [f, k] : a.den) den[f] = k;
    for (const auto& [f, k] : b.den) {
        auto it = den.find(f);
        if (it == den.end()) den.emplace(f, k);
        else it->second = std::max(it->second, k);
    }
    DenMap comp_a, comp_b;
    for (const auto& [f, k] : den) {
        int ka = 0, kb = 0;
        if (auto it = a.den.find(f); it != a.den.end()) ka = it->second;
        if (auto it = b.den.find(f); it != b.den.end()) kb = it->second;
        if (k - ka > 0) comp_a.emplace(f, k - ka);
        if (k - kb > 0) comp_b.emplace(f, k - kb);
    }
    r.num = poly_add(poly_mul(a.num, expand_factors(comp_a)),
                     poly_mul(b.num, expand_factors(comp_b)));
    r.den = std::move(den);
    cancel(r);
    return r;
}

NF nf_neg(const NF& a) { return NF{poly_neg(a.num), a.den}; }

NF nf_sub(const NF& a, const NF& b) { return nf_add(a, nf_neg(b)); }

NF nf_mul(const NF& a, const NF& b) {
    NF r;
    r.num = poly_mul(a.num, b.num);
    r.den = a.den;
    for (const auto& [f, k] : b.den) r.den[f] += k;
    cancel(r);
    return r;
}

void nf_mul_atom(NF& a, const Expr& atom_tree, const Rational& e) {
    if (e == 0 || a.num.empty()) return;
    if (is_exp_atom(atom_tree)) {
        std::optional<Expr> arg = scale_exp_arg(atom_tree.arg(), e);
        if (!arg) return;
        NF k = nf_atom(Expr::exp_of(*arg));
        a.num = poly_mul(a.num, k.num);
        return;
    }
    if (is_const_atom(atom_tree)) {
        const Rational& c = atom_tree.const_value();
        if (is_integer(e)) {
            long long n = to_long(e);
            Rational scale = n >= 0 ? rat_pow(c, n) : Rational(1) / rat_pow(c, -n);
            a.num = poly_scale(a.num, scale);
            return;
        }
        // c^e with fractional e: pull out the integer part, keep c^f with
        // f in (0,1) as an opaque surd atom (negative base: odd denominator
        // only).
        BigInt fl = rat_floor(e);
        Rational f = e - Rational(fl);
        Rational base = c;
        long long n = fl.convert_to<long long>();
        Rational int_scale = n >= 0 ? rat_pow(c, n) : Rational(1) / rat_pow(c, -n);
        if (base < 0) {
            if (denominator(f) % 2 == 0) {
                // No real simplification; keep the signed base opaque.
                a.num = poly_scale(a.num, int_scale);
                Mono m;
                m.emplace(Expr::constant(base), f);
                Poly p;
                p.emplace(std::move(m), Rational(1));
                a.num = poly_mul(a.num, p);
                return;
            }
            // (-c)^f = -(c^f) when numerator(f) is odd.
            if (numerator(f) % 2 != 0) int_scale = -int_scale;
            base = -base;
        }
        if (auto root = rat_root(base, denominator(f))) {
            a.num = poly_scale(a.num, int_scale * rat_pow(*root, numerator(f).convert_to<long long>()));
            return;
        }
        a.num = poly_scale(a.num, int_scale);
        if (base != 1) {
            Mono m;
            m.emplace(Expr::constant(base), f);
            Poly p;
            p.emplace(std::move(m), Rational(1));
            a.num = poly_mul(a.num, p);
        }
        return;
    }
    // Variables, parameters, ln-kernels, compound bases.
    if (e > 0 && is_integer(e) && is_compound_atom(atom_tree)) {
        NF base = to_nf(atom_tree);
        a.num = poly_mul(a.num, poly_pow(base.num, to_long(e)));
        cancel(a);
        return;
    }
    if (e > 0 && (!is_compound_atom(atom_tree) || e < 1)) {
        Mono m;
        m.emplace(atom_tree, e);
        Poly p;
        p.emplace(std::move(m), Rational(1));
        a.num = poly_mul(a.num, p);
        if (is_compound_atom(atom_tree)) cancel(a);
        return;
    }
    if (e > 1 && is_compound_atom(atom_tree)) {
        // Split integer and fractional parts.
        BigInt fl = rat_floor(e);
        nf_mul_atom(a, atom_tree, Rational(fl));
        nf_mul_atom(a, atom_tree, e - Rational(fl));
        return;
    }
    // e < 0: denominator side, fractional remainder back into num.
    BigInt k = -rat_floor(e);  // ceil(-e)
    Rational leftover = e + Rational(k);
    int ki = k.convert_to<int>();
    if (is_compound_atom(atom_tree)) {
        NF base = to_nf(atom_tree);
        den_insert(a, base.num, ki);
    } else {
        a.den[atom_tree] += ki;
    }
    if (leftover != 0) nf_mul_atom(a, atom_tree, leftover);
    cancel(a);
}

NF nf_inv(const NF& a) {
    if (a.num.empty()) throw DomainError("division by zero expression");
    NF r;
    r.num = expand_factors(a.den);
    Factored f = factor_normalize(a.num);
    r.num = poly_scale(r.num, Rational(1) / f.scalar);
    for (const auto& [atom, e] : f.mono_gcd) nf_mul_atom(r, atom, -e);
    if (!(f.primitive.size() == 1 && f.primitive.begin()->first.empty())) {
        Expr ptree = tree_from_nf(NF{f.primitive, {}});
        nf_mul_atom(r, ptree, Rational(-1));
    } else {
        r.num = poly_scale(r.num, Rational(1) / f.primitive.begin()->second);
    }
    cancel(r);
    return r;
}

NF nf_div(const NF& a, const NF& b) { return nf_mul(a, nf_inv(b)); }

namespace {

NF nf_pow_int(const NF& a, long long n) {
    if (n == 0) return nf_one();
    if (n > 1024 || n < -1024)
        throw DomainError("exponent magnitude exceeds the supported range");
    if (n < 0) return nf_pow_int(nf_inv(a), -n);
    NF r;
    r.num = poly_pow(a.num, n);
    for (const auto& [fct, k] : a.den) r.den[fct] = k * static_cast<int>(n);
    cancel(r);
    return r;
}

NF nf_frac_pow(const NF& a, const Rational& f) {
    assert(f > 0 && f < 1);
    if (a.num.empty()) return nf_zero();
    NF r = nf_one();
    Factored fac = factor_normalize(a.num);
    Rational scalar = fac.scalar;
    Poly prim = fac.primitive;
    if (scalar < 0 && denominator(f) % 2 == 0) {
        // Even root: leave the sign with the base instead of splitting off
        // a root of a negative constant.
        prim = poly_scale(prim, -1);
        scalar = -scalar;
    }
    nf_mul_atom(r, Expr::constant(scalar), f);
    for (const auto& [atom, e] : fac.mono_gcd) nf_mul_atom(r, atom, e * f);
    if (!(prim.size() == 1 && prim.begin()->first.empty())) {
        Expr ptree = tree_from_nf(NF{prim, {}});
        nf_mul_atom(r, ptree, f);
    } else {
        nf_mul_atom(r, Expr::constant(prim.begin()->second), f);
    }
    for (const auto& [fct, k] : a.den) nf_mul_atom(r, fct, -Rational(k) * f);
    cancel(r);
    return r;
}

}  // namespace

NF nf_pow(const NF& a, const Rational& q) {
    if (q == 0) return nf_one();
    if (a.num.empty()) {
        if (q < 0) throw DomainError("zero raised to a negative power");
        return nf_zero();
    }
    BigInt fl = rat_floor(q);
    if (fl > 1024 || fl < -1024)
        throw DomainError("exponent magnitude exceeds the supported range");
    Rational f = q - Rational(fl);
    NF r = nf_pow_int(a, fl.convert_to<long long>());
    if (f != 0) r = nf_mul(r, nf_frac_pow(a, f));
    return r;
}

NF nf_exp(const NF& arg) {
    if (arg.num.empty()) return nf_one();
    if (!arg.den.empty()) return nf_atom(Expr::exp_of(tree_from_nf(arg)));
    NF r = nf_one();
    Poly leftover;
    for (const auto& [m, c] : arg.num) {
        // exp(c * ln u) -> u^c
        if (m.size() == 1 && m.begin()->first.kind() == Expr::Kind::LnK &&
            m.begin()->second == 1) {
            r = nf_mul(r, nf_pow(to_nf(m.begin()->first.arg()), c));
        } else {
            leftover.emplace(m, c);
        }
    }
    if (!leftover.empty())
        r = nf_mul(r, nf_atom(Expr::exp_of(tree_from_nf(NF{leftover, {}}))));
    return r;
}

NF nf_ln(const NF& arg) {
    if (arg.num.empty()) throw DomainError("ln(0)");
    NF r = nf_zero();
    auto add_ln = [&](const Expr& tree, const Rational& mult) {
        NF t = nf_atom(Expr::ln_of(tree));
        t.num = poly_scale(t.num, mult);
        r = nf_add(r, t);
    };
    // ln|c * mono * prod(P_i^k)| splits into a sum of kernel logs.
    Factored fac = factor_normalize(arg.num);
    Rational ac = fac.scalar < 0 ? -fac.scalar : fac.scalar;
    for (const auto& [atom, e] : fac.mono_gcd) {
        if (is_exp_atom(atom)) {
            r = nf_add(r, to_nf(atom.arg()));  // ln(exp(u)) = u
        } else {
            add_ln(atom, e);
        }
    }
    if (!(fac.primitive.size() == 1 && fac.primitive.begin()->first.empty())) {
        PrimSplit split = split_primitive(fac.primitive);
        Rational s = split.scalar < 0 ? -split.scalar : split.scalar;
        ac *= s;
        for (const auto& [part, k] : split.parts) {
            if (part.size() == 1 && part.begin()->first.size() == 1 &&
                part.begin()->second == 1) {
                add_ln(part.begin()->first.begin()->first,
                       Rational(k) * part.begin()->first.begin()->second);
            } else {
                add_ln(tree_from_nf(NF{part, {}}), Rational(k));
            }
        }
    } else {
        ac *= fac.primitive.begin()->second < 0 ? -fac.primitive.begin()->second
                                                : fac.primitive.begin()->second;
    }
    if (ac != 1) add_ln(Expr::constant(ac), Rational(1));
    for (const auto& [f, k] : arg.den) add_ln(f, Rational(-k));
    return r;
}

NF to_nf(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            return nf_const(e.const_value());
        case Expr::Kind::Variable:
        case Expr::Kind::Parameter:
            return nf_atom(e);
        case Expr::Kind::Sum: {
            NF r = nf_zero();
            for (const auto& k : e.children()) r = nf_add(r, to_nf(k));
            return r;
        }
        case Expr::Kind::Product: {
            NF r = nf_one();
            for (const auto& k : e.children()) r = nf_mul(r, to_nf(k));
            return r;
        }
        case Expr::Kind::Power:
            return nf_pow(to_nf(e.base()), e.exponent());
        case Expr::Kind::ExpK:
            return nf_exp(to_nf(e.arg()));
        case Expr::Kind::LnK:
            return nf_ln(to_nf(e.arg()));
    }
    throw InternalError("unhandled node kind");
}

namespace {

Expr term_tree(const Mono& m, const Rational& c) {
    std::vector<Expr> factors;
    if (c != 1 || m.empty()) factors.push_back(Expr::constant(c));
    auto emit = [&](const Expr& atom, const Rational& e) {
        if (e == 1) factors.push_back(atom);
        else factors.push_back(Expr::pow(atom, e));
    };
    // Parameters read before variables: C*x, c2*x.
    for (const auto& [atom, e] : m)
        if (atom.kind() == Expr::Kind::Parameter) emit(atom, e);
    for (const auto& [atom, e] : m)
        if (atom.kind() != Expr::Kind::Parameter) emit(atom, e);
    if (factors.size() == 1) return factors[0];
    return Expr::product(std::move(factors));
}

}  // namespace

Expr tree_from_nf(const NF& v) {
    std::vector<Expr> terms;
    for (auto it = v.num.rbegin(); it != v.num.rend(); ++it)
        terms.push_back(term_tree(it->first, it->second));
    Expr num_tree;
    if (terms.empty()) num_tree = Expr::constant(0);
    else if (terms.size() == 1) num_tree = terms[0];
    else num_tree = Expr::sum(std::move(terms));
    if (v.den.empty()) return num_tree;

    std::vector<Expr> factors;
    if (num_tree.kind() == Expr::Kind::Product) {
        factors = num_tree.children();
    } else if (!num_tree.is_one()) {
        factors.push_back(num_tree);
    }
    for (const auto& [f, k] : v.den) factors.push_back(Expr::pow(f, Rational(-k)));
    if (factors.size() == 1) return factors[0];
    return Expr::product(std::move(factors));
}

}  // namespace liesym::nf
