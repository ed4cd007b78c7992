#pragma once

#include "liesym/expr.hpp"
#include "liesym/laurent.hpp"
#include "liesym/linalg.hpp"
#include "liesym/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesym {

// Infinitesimal generator components of a point symmetry.
struct TangentField {
    Expr xi;
    Expr eta;
};

// Divide both components by the leading rational coefficient (of xi when
// xi != 0, else of eta) so spans compare structurally.
TangentField normalize_field(const TangentField& f);

// Linearized symmetry condition residual
//   eta_x - xi_y h^2 + (eta_y - xi_x) h - (xi h_x + eta h_y)
Expr lsc_residual(const Expr& h, const Expr& xi, const Expr& eta);

// First prolongation coefficient eta^x = eta_x + (eta_y - xi_x) y_x - xi_y y_x^2
// with y_x a formal variable.
Expr prolong1_coeff(const Expr& xi, const Expr& eta);

// Action of the prolonged field on y_x - h:  -xi h_x - eta h_y + eta^x.
Expr prolongation_residual(const Expr& h, const Expr& xi, const Expr& eta);

// Characteristic Q = eta - h xi.
Expr characteristic(const Expr& h, const Expr& xi, const Expr& eta);

// Residual Q_x + h Q_y - h_y Q of the characteristic PDE; 0 iff Q is the
// characteristic of a symmetry.
Expr characteristic_residual(const Expr& h, const Expr& q);

// One template monomial x^xp * y^yp * exp(kp*x).
struct AnsatzMono {
    int xp = 0;
    int yp = 0;
    Rational kp = 0;
};

struct AnsatzSpec {
    std::string name;
    std::vector<AnsatzMono> xi_monomials;
    std::vector<AnsatzMono> eta_monomials;
};

// xi = c1 x + c2 y + c3, eta = c4 x + c5 y + c6.
AnsatzSpec restrictive_ansatz();
// xi = c1 y^2 + c2 x + c3 y + c4 and likewise for eta.
AnsatzSpec quadratic_ansatz();
// xi = alpha(x), eta = beta(x) y + gamma(x) with alpha, beta, gamma truncated
// Laurent polynomials in x over [m_min, m_max].
AnsatzSpec functional_ansatz(int m_min, int m_max);

struct AnsatzTemplates {
    Expr xi;
    Expr eta;
    std::vector<std::string> unknowns;  // c1, c2, ... in template order
};

AnsatzTemplates build_ansatz(const AnsatzSpec& spec);

// Homogeneous determining system: one row per monomial of the cleared LSC
// residual, columns in unknown order.
struct LinearSystem {
    std::vector<std::string> unknowns;
    RatMat rows;
};

LinearSystem determining_system(const Ode& ode, const AnsatzSpec& spec);

std::vector<RatVec> nullspace(const LinearSystem& sys);

// Nontrivial (Q != 0) fields spanning the solution space of the determining
// system, one per nullspace basis vector, in basis order.
std::vector<TangentField> solve_symmetries(const Ode& ode, const AnsatzSpec& spec);

// Pipeline selection rule: rank by (xi == 0 and eta free of y) first, then
// xi == 0, then separable orbit equation eta/xi with fewest nontrivial
// factors, ties by basis order. Returns indices in preference order.
std::vector<std::size_t> rank_fields(const Ode& ode, const std::vector<TangentField>& fields);

}  // namespace liesym
