#include "liesym/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace liesym;

namespace {

// Independent oracle: plain rational Gauss-Jordan nullspace (textbook RREF),
// kept deliberately separate from the Bareiss implementation it checks.
std::vector<RatVec> rref_nullspace(RatMat m, std::size_t ncols) {
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational lead = m[row][col];
        for (auto& q : m[row]) q /= lead;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_zero_vec(const RatVec& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

RatVec mat_apply(const RatMat& m, const RatVec& v) {
    RatVec out;
    for (const auto& row : m) {
        Rational acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
        out.push_back(acc);
    }
    return out;
}

}  // namespace

TEST_CASE("single-pivot system leaves the other unknown free") {
    RatMat rows{{Rational(1), Rational(0)}};
    auto basis = nullspace_basis(rows, 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == 0);
    CHECK(basis[0][1] == 1);
}

TEST_CASE("nullspace vectors annihilate the matrix and match the RREF oracle") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> dim(1, 6), entry(-4, 4), denpick(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t nrows = dim(rng), ncols = dim(rng);
        RatMat m(nrows, RatVec(ncols));
        for (auto& row : m)
            for (auto& q : row) q = Rational(entry(rng), denpick(rng));

        auto basis = nullspace_basis(m, ncols);
        auto oracle = rref_nullspace(m, ncols);
        CHECK(basis.size() == oracle.size());
        CHECK(basis.size() == ncols - matrix_rank(m, ncols));
        for (const auto& v : basis) CHECK(is_zero_vec(mat_apply(m, v)));
        // Same canonical construction (free columns in order, free entry 1)
        // must agree exactly.
        for (std::size_t i = 0; i < basis.size() && i < oracle.size(); ++i)
            CHECK(basis[i] == oracle[i]);
    }
}

TEST_CASE("solve_linear solves consistent systems and reports inconsistency") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        RatMat m(3, RatVec(3));
        for (auto& row : m)
            for (auto& q : row) q = Rational(entry(rng));
        RatVec x0(3);
        for (auto& q : x0) q = Rational(entry(rng));
        RatVec b = mat_apply(m, x0);
        auto sol = solve_linear(m, b);
        REQUIRE(sol.has_value());
        CHECK(mat_apply(m, *sol) == b);
    }
    RatMat bad{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK(!solve_linear(bad, {Rational(0), Rational(1)}).has_value());
}
