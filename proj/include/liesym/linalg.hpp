#pragma once

#include "liesym/rational.hpp"

#include <optional>
#include <vector>

namespace liesym {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

// Basis of {v : A v = 0} via fraction-free (Bareiss) elimination over the
// integers after clearing row denominators. Deterministic: one basis vector
// per free column in column order, with that coordinate set to 1.
std::vector<RatVec> nullspace_basis(const RatMat& rows, std::size_t ncols);

std::size_t matrix_rank(const RatMat& rows, std::size_t ncols);

// Unique or least-structured solution of A x = b (consistent systems with
// full column rank); nullopt when inconsistent.
std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b);

}  // namespace liesym
