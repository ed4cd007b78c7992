#pragma once

#include "liesym/canonical.hpp"
#include "liesym/parser.hpp"
#include "liesym/symmetry.hpp"

#include <optional>

namespace liesym {

// dy/dx = F(y/x); F is an expression in the single variable r.
struct HomogeneousForm {
    Expr F;
};

// dy/dx + F(x) y = G(x), i.e. h = G(x) - F(x) y.
struct LinearForm {
    Expr F;
    Expr G;
};

// Symbolic scale-invariance test h(lx, ly) == h(x, y); on success F(r) is
// recovered by the substitution y := r x.
std::optional<HomogeneousForm> detect_homogeneous(const Ode& ode);

// Scaling symmetry of every homogeneous equation.
TangentField homogeneous_symmetry();

// ln|x| = I(y/x) + C with I the antiderivative of 1/(F(r) - r); quadrature
// form when the integral is outside the limited class. Throws
// TrivialSymmetryError-free explicit y = C x when F(r) == r.
SolutionForm homogeneous_solution(const HomogeneousForm& form);

std::optional<LinearForm> detect_linear(const Ode& ode);

// (0, u0) with u0 = exp(-int F dx); throws IntegrationFailedError when the
// integral is outside the limited class.
TangentField linear_symmetry(const LinearForm& form);

}  // namespace liesym
