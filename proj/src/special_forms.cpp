#include "liesym/special_forms.hpp"

#include "nf.hpp"

namespace liesym {

std::optional<HomogeneousForm> detect_homogeneous(const Ode& ode) {
    Expr lam = Expr::parameter("@lambda");
    Expr x = Expr::variable(Var::x), y = Expr::variable(Var::y);
    Expr scaled = substitute(ode.h, {{Var::x, lam * x}, {Var::y, lam * y}});
    if (!identical(scaled, ode.h)) return std::nullopt;
    Expr F = substitute(ode.h, Var::y, Expr::variable(Var::r) * x);
    if (mentions(F, Var::x) || mentions(F, Var::y)) return std::nullopt;
    return HomogeneousForm{F};
}

TangentField homogeneous_symmetry() {
    return TangentField{Expr::variable(Var::x), Expr::variable(Var::y)};
}

SolutionForm homogeneous_solution(const HomogeneousForm& form) {
    Expr r = Expr::variable(Var::r);
    Expr x = Expr::variable(Var::x), y = Expr::variable(Var::y);
    Expr C = Expr::parameter("C");
    Expr fr = normalize(form.F - r);
    SolutionForm sol;
    if (fr.is_zero()) {
        // Trivial scaling symmetry: r = y/x is itself constant on solutions.
        sol.kind = SolutionForm::Kind::Explicit;
        sol.branches = {normalize(C * x)};
        return sol;
    }
    Expr integrand = normalize(Expr::integer(1) / fr);
    Expr ratio = normalize(y / x);
    try {
        Expr I = integrate_limited(integrand, Var::r);
        sol.kind = SolutionForm::Kind::Implicit;
        sol.implicit_relation =
            normalize(Expr::ln_of(x) - substitute(I, Var::r, ratio) - C);
        return sol;
    } catch (const IntegrationFailedError&) {
        sol.kind = SolutionForm::Kind::Quadrature;
        sol.quadrature_integrand = integrand;
        sol.quad_r = ratio;
        sol.quad_s = normalize(Expr::ln_of(x));
        return sol;
    }
}

std::optional<LinearForm> detect_linear(const Ode& ode) {
    nf::NF v = nf::to_nf(ode.h);
    for (const auto& [f, k] : v.den)
        if (mentions(f, Var::y)) return std::nullopt;
    nf::Poly deg0, deg1;
    for (const auto& [m, c] : v.num) {
        nf::Mono rest = m;
        long ydeg = 0;
        for (auto it = rest.begin(); it != rest.end();) {
            const Expr& atom = it->first;
            if (atom.kind() == Expr::Kind::Variable && atom.var() == Var::y) {
                if (!is_integer(it->second)) return std::nullopt;
                ydeg = static_cast<long>(to_long(it->second));
                it = rest.erase(it);
            } else if (mentions(atom, Var::y)) {
                return std::nullopt;  // y buried in a kernel or compound base
            } else {
                ++it;
            }
        }
        if (ydeg == 0) deg0.emplace(rest, c);
        else if (ydeg == 1) deg1.emplace(rest, c);
        else return std::nullopt;
    }
    Expr A = nf::tree_from_nf(nf::NF{deg1, v.den});  // h = A y + B
    Expr B = nf::tree_from_nf(nf::NF{deg0, v.den});
    return LinearForm{normalize(-A), normalize(B)};
}

TangentField linear_symmetry(const LinearForm& form) {
    Expr intF = integrate_limited(form.F, Var::x);
    Expr u0 = normalize(Expr::exp_of(-intF));
    return TangentField{Expr::integer(0), u0};
}

}  // namespace liesym
