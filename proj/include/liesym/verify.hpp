#pragma once

#include "liesym/canonical.hpp"
#include "liesym/parser.hpp"
#include "liesym/symmetry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace liesym {

struct VerifyReport {
    std::string check;
    int samples = 0;   // valid samples evaluated
    int skipped = 0;   // rejected by the singular guard or domain constraints
    double max_abs = 0.0;
    double max_rel = 0.0;
    double tolerance = 0.0;
    bool pass = false;  // max_rel <= tolerance and skipped < half the attempts
};

struct SampleConfig {
    std::uint64_t seed = 12345;
    double lo = -3.0, hi = 3.0;   // sample box per coordinate
    double guard = 1e-3;          // singular-locus rejection threshold
};

// Numeric residual of the linearized symmetry condition at n random
// non-singular points.
VerifyReport check_lsc_numeric(const Ode& ode, const TangentField& field, int n,
                               double tol, const SampleConfig& cfg = {});

// Q != 0 symbolically and |Q| > 1e-6 at some sample point.
bool check_nontrivial(const Ode& ode, const TangentField& field,
                      const SampleConfig& cfg = {});

// Explicit solutions: central finite difference of each branch against
// h(x, y) on a grid over [x_lo, x_hi] for each C. Implicit: residual
// G_x + G_y h along numerically traced level sets.
VerifyReport check_solution(const Ode& ode, const SolutionForm& sol,
                            const std::vector<double>& c_values, double x_lo,
                            double x_hi, double tol, const SampleConfig& cfg = {});

// diff() against central finite differences at 50 random points.
VerifyReport check_derivative_fd(const Expr& e, Var v, double tol,
                                 const SampleConfig& cfg = {});

// Numeric confirmation of xi r_x + eta r_y == 0 and xi s_x + eta s_y == 1.
VerifyReport check_canonical_identities(const TangentField& field,
                                        const CanonicalPair& pair, int n, double tol,
                                        const SampleConfig& cfg = {});

// The raw quotient (s_x + h s_y)/(r_x + h r_y) agrees across point pairs
// sharing r and equals F(r) there.
VerifyReport check_s_independence(const Ode& ode, const CanonicalPair& pair,
                                  const Expr& F, int pairs, double tol,
                                  const SampleConfig& cfg = {});

}  // namespace liesym
