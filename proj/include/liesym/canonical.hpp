#pragma once

#include "liesym/parser.hpp"
#include "liesym/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesym {

// Canonical coordinates for a one-parameter group: r is constant on orbits
// (xi r_x + eta r_y == 0) and s advances along them (xi s_x + eta s_y == 1).
struct CanonicalPair {
    Expr r;
    Expr s;
    // x and y as expressions in (r, s) when the change of variables is
    // invertible within the catalog.
    std::optional<Expr> inverse_x;
    std::optional<Expr> inverse_y;
};

struct SolutionForm {
    enum class Kind { Explicit, Implicit, Quadrature };
    Kind kind;
    // Explicit: y = branch(x, C) per entry (both root branches when even
    // roots are taken).
    std::vector<Expr> branches;
    // Implicit: G(x, y, C) == 0.
    Expr implicit_relation;
    // Quadrature: s = int F(r) dr + C with the coordinates attached.
    Expr quadrature_integrand;
    Expr quad_r, quad_s;
    std::string constant_name = "C";
};

// Construct canonical coordinates for a nontrivial field. Strategies:
// xi == 0 -> r = x, s = int dy/eta; eta == 0 -> r = y, s = int dx/xi;
// otherwise eta/xi must separate as p(x) q(y) (with xi free of y), giving a
// first integral r and s = int dx/xi.
CanonicalPair canonical_coords(const TangentField& field);

// F(r) = (s_x + h s_y) / (r_x + h r_y) rewritten in r alone via the pair's
// inverse map.
Expr canonical_ode(const Ode& ode, const CanonicalPair& pair);

// Antiderivative within the limited class: Laurent terms, exp kernels,
// rational functions whose denominators factor over Q into linear and
// (via the u'/u pattern) quadratic pieces.
Expr integrate_limited(const Expr& f, Var v);

// Form s = S(r) + C in the original variables and attempt an explicit solve
// for y (degree <= 2 polynomial relations or single isolation of the unique
// y-carrying monomial); falls back to the implicit relation.
SolutionForm back_substitute(const CanonicalPair& pair, const Expr& S, const Ode& ode);

}  // namespace liesym
