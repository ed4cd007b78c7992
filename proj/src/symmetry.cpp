#include "liesym/symmetry.hpp"

#include "nf.hpp"

#include <algorithm>

namespace liesym {

Expr lsc_residual(const Expr& h, const Expr& xi, const Expr& eta) {
    Expr hx = diff(h, Var::x), hy = diff(h, Var::y);
    Expr e = diff(eta, Var::x) - diff(xi, Var::y) * h * h +
             (diff(eta, Var::y) - diff(xi, Var::x)) * h - (xi * hx + eta * hy);
    return normalize(e);
}

Expr prolong1_coeff(const Expr& xi, const Expr& eta) {
    Expr yx = Expr::variable(Var::yx);
    Expr e = diff(eta, Var::x) + (diff(eta, Var::y) - diff(xi, Var::x)) * yx -
             diff(xi, Var::y) * yx * yx;
    return normalize(e);
}

Expr prolongation_residual(const Expr& h, const Expr& xi, const Expr& eta) {
    Expr e = -xi * diff(h, Var::x) - eta * diff(h, Var::y) + prolong1_coeff(xi, eta);
    return normalize(e);
}

Expr characteristic(const Expr& h, const Expr& xi, const Expr& eta) {
    return normalize(eta - h * xi);
}

Expr characteristic_residual(const Expr& h, const Expr& q) {
    Expr e = diff(q, Var::x) + h * diff(q, Var::y) - diff(h, Var::y) * q;
    return normalize(e);
}

AnsatzSpec restrictive_ansatz() {
    AnsatzSpec s;
    s.name = "restrictive";
    s.xi_monomials = {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
    s.eta_monomials = s.xi_monomials;
    return s;
}

AnsatzSpec quadratic_ansatz() {
    AnsatzSpec s;
    s.name = "quadratic";
    s.xi_monomials = {{0, 2, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
    s.eta_monomials = s.xi_monomials;
    return s;
}

AnsatzSpec functional_ansatz(int m_min, int m_max) {
    if (m_min > m_max) throw InternalError("functional ansatz window is empty");
    AnsatzSpec s;
    s.name = "functional";
    for (int m = m_min; m <= m_max; ++m) s.xi_monomials.push_back({m, 0, 0});
    for (int m = m_min; m <= m_max; ++m) s.eta_monomials.push_back({m, 1, 0});
    for (int m = m_min; m <= m_max; ++m) s.eta_monomials.push_back({m, 0, 0});
    return s;
}

namespace {

Expr mono_expr(const AnsatzMono& m) {
    std::vector<Expr> f;
    if (m.xp != 0) f.push_back(Expr::pow(Expr::variable(Var::x), Rational(m.xp)));
    if (m.yp != 0) f.push_back(Expr::pow(Expr::variable(Var::y), Rational(m.yp)));
    if (m.kp != 0)
        f.push_back(Expr::exp_of(Expr::constant(m.kp) * Expr::variable(Var::x)));
    if (f.empty()) return Expr::integer(1);
    return Expr::product(std::move(f));
}

}  // namespace

AnsatzTemplates build_ansatz(const AnsatzSpec& spec) {
    if (spec.xi_monomials.empty() && spec.eta_monomials.empty())
        throw InternalError("ansatz has no monomials");
    AnsatzTemplates t;
    int counter = 1;
    std::vector<Expr> xi_terms, eta_terms;
    for (const auto& m : spec.xi_monomials) {
        std::string name = "c" + std::to_string(counter++);
        t.unknowns.push_back(name);
        xi_terms.push_back(Expr::parameter(name) * mono_expr(m));
    }
    for (const auto& m : spec.eta_monomials) {
        std::string name = "c" + std::to_string(counter++);
        t.unknowns.push_back(name);
        eta_terms.push_back(Expr::parameter(name) * mono_expr(m));
    }
    t.xi = Expr::sum(std::move(xi_terms));
    t.eta = Expr::sum(std::move(eta_terms));
    return t;
}

LinearSystem determining_system(const Ode& ode, const AnsatzSpec& spec) {
    AnsatzTemplates t = build_ansatz(spec);
    Expr residual = lsc_residual(ode.h, t.xi, t.eta);

    // Clearing the common denominator leaves the numerator polynomial; its
    // monomial coefficients must vanish identically.
    nf::NF v = nf::to_nf(residual);
    Expr cleared = nf::tree_from_nf(nf::NF{v.num, {}});
    LaurentPoly lp = as_laurent(cleared);

    LinearSystem sys;
    sys.unknowns = t.unknowns;
    for (const auto& [key, coeff] : lp.terms) {
        RatVec row(sys.unknowns.size(), Rational(0));
        nf::NF cv = nf::to_nf(coeff);
        for (const auto& [mono, c] : cv.num) {
            if (mono.size() != 1 || mono.begin()->second != 1 ||
                mono.begin()->first.kind() != Expr::Kind::Parameter)
                throw InternalError("determining system row is not linear in the unknowns");
            const std::string& name = mono.begin()->first.param_name();
            auto it = std::find(sys.unknowns.begin(), sys.unknowns.end(), name);
            if (it == sys.unknowns.end())
                throw InternalError("unknown coefficient " + name);
            row[static_cast<std::size_t>(it - sys.unknowns.begin())] = c;
        }
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

std::vector<RatVec> nullspace(const LinearSystem& sys) {
    if (sys.rows.empty()) {
        // No constraints: the whole space.
        std::vector<RatVec> basis;
        for (std::size_t i = 0; i < sys.unknowns.size(); ++i) {
            RatVec v(sys.unknowns.size(), Rational(0));
            v[i] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    return nullspace_basis(sys.rows, sys.unknowns.size());
}

namespace {

TangentField instantiate(const AnsatzSpec& spec, const RatVec& v) {
    std::vector<Expr> xi_terms, eta_terms;
    std::size_t i = 0;
    for (const auto& m : spec.xi_monomials) {
        const Rational& c = v[i++];
        if (c != 0) xi_terms.push_back(Expr::constant(c) * mono_expr(m));
    }
    for (const auto& m : spec.eta_monomials) {
        const Rational& c = v[i++];
        if (c != 0) eta_terms.push_back(Expr::constant(c) * mono_expr(m));
    }
    return TangentField{normalize(Expr::sum(std::move(xi_terms))),
                        normalize(Expr::sum(std::move(eta_terms)))};
}

}  // namespace

TangentField normalize_field(const TangentField& f) {
    Rational lead = f.xi.is_zero() ? leading_coeff(f.eta) : leading_coeff(f.xi);
    if (lead == 0 || lead == 1) return f;
    Expr scale = Expr::constant(Rational(1) / lead);
    return TangentField{normalize(scale * f.xi), normalize(scale * f.eta)};
}

std::vector<TangentField> solve_symmetries(const Ode& ode, const AnsatzSpec& spec) {
    LinearSystem sys = determining_system(ode, spec);
    std::vector<TangentField> out;
    for (const auto& v : nullspace(sys)) {
        TangentField f = normalize_field(instantiate(spec, v));
        Expr q = characteristic(ode.h, f.xi, f.eta);
        if (q.is_zero()) continue;  // trivial symmetry, useless for solving
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

// Number of nontrivial factors in a separable orbit equation; nullopt when
// eta/xi is not separable as p(x) * q(y).
std::optional<int> separable_complexity(const Ode& ode, const TangentField& f);

}  // namespace

std::vector<std::size_t> rank_fields(const Ode& ode, const std::vector<TangentField>& fields) {
    struct Scored {
        int tier;
        int complexity;
        std::size_t index;
    };
    std::vector<Scored> scored;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const TangentField& f = fields[i];
        int tier;
        int complexity = 0;
        if (f.xi.is_zero() && !mentions(f.eta, Var::y)) {
            tier = 0;
        } else if (f.xi.is_zero()) {
            tier = 1;
        } else if (f.eta.is_zero()) {
            tier = 2;
            complexity = 0;
        } else {
            auto c = separable_complexity(ode, f);
            if (c) {
                tier = 2;
                complexity = *c;
            } else {
                tier = 3;
            }
        }
        scored.push_back({tier, complexity, i});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.tier != b.tier) return a.tier < b.tier;
        return a.complexity < b.complexity;
    });
    std::vector<std::size_t> order;
    for (const auto& s : scored) order.push_back(s.index);
    return order;
}

namespace {

std::optional<int> separable_complexity(const Ode&, const TangentField& f) {
    Expr w = normalize(f.eta / f.xi);
    bool has_x = mentions(w, Var::x), has_y = mentions(w, Var::y);
    // Crude but honest: count variable-bearing sides of p(x)*q(y); the
    // canonical module performs the real separation.
    nf::NF v = nf::to_nf(w);
    for (const auto& [fac, k] : v.den)
        if (mentions(fac, Var::x) && mentions(fac, Var::y)) return std::nullopt;
    for (const auto& [m, c] : v.num)
        for (const auto& [atom, e] : m)
            if (mentions(atom, Var::x) && mentions(atom, Var::y)) return std::nullopt;
    if (v.num.size() > 1) {
        // Multi-term numerators must split rank-1; defer the exact test to
        // canonical_coords and treat mixed terms as non-separable here.
        bool mixed = false;
        for (const auto& [m, c] : v.num) {
            bool mx = false, my = false;
            for (const auto& [atom, e] : m) {
                mx = mx || mentions(atom, Var::x);
                my = my || mentions(atom, Var::y);
            }
            if (mx && my) mixed = true;
        }
        if (mixed && has_x && has_y) return std::nullopt;
    }
    return (has_x ? 1 : 0) + (has_y ? 1 : 0);
}

}  // namespace

}  // namespace liesym
