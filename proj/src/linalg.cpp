#include "liesym/linalg.hpp"

#include "liesym/errors.hpp"

namespace liesym {

namespace {

using IntMat = std::vector<std::vector<BigInt>>;

// Clear denominators row-wise.
IntMat to_integer_rows(const RatMat& rows, std::size_t ncols) {
    IntMat m;
    m.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != ncols) throw InternalError("ragged linear system row");
        BigInt l = 1;
        for (const auto& q : row) l = lcm(l, denominator(q));
        std::vector<BigInt> r;
        r.reserve(ncols);
        for (const auto& q : row) r.push_back(numerator(q) * (l / denominator(q)));
        m.push_back(std::move(r));
    }
    return m;
}

struct Echelon {
    IntMat m;
    std::vector<std::size_t> pivot_cols;  // per pivot row, in order
};

// Bareiss fraction-free forward elimination; all divisions are exact.
Echelon eliminate(IntMat m, std::size_t ncols) {
    Echelon e;
    std::size_t row = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            for (std::size_t j = col + 1; j < ncols; ++j)
                m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[row][col];
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace

std::vector<RatVec> nullspace_basis(const RatMat& rows, std::size_t ncols) {
    Echelon e = eliminate(to_integer_rows(rows, ncols), ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
            std::size_t p = e.pivot_cols[k];
            Rational acc = 0;
            for (std::size_t j = p + 1; j < ncols; ++j)
                if (v[j] != 0) acc += Rational(e.m[k][j]) * v[j];
            v[p] = -acc / Rational(e.m[k][p]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t matrix_rank(const RatMat& rows, std::size_t ncols) {
    return eliminate(to_integer_rows(rows, ncols), ncols).pivot_cols.size();
}

std::optional<RatVec> solve_linear(const RatMat& a, const RatVec& b) {
    if (a.size() != b.size()) throw InternalError("solve_linear size mismatch");
    if (a.empty()) return RatVec{};
    std::size_t ncols = a[0].size();
    RatMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);

    // Rational Gauss-Jordan on the augmented matrix.
    std::size_t row = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t col = 0; col < ncols && row < aug.size(); ++col) {
        std::size_t piv = row;
        while (piv < aug.size() && aug[piv][col] == 0) ++piv;
        if (piv == aug.size()) continue;
        std::swap(aug[row], aug[piv]);
        Rational lead = aug[row][col];
        for (auto& q : aug[row]) q /= lead;
        for (std::size_t i = 0; i < aug.size(); ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (std::size_t j = col; j <= ncols; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < aug.size(); ++i)
        if (aug[i][ncols] != 0) return std::nullopt;  // inconsistent

    RatVec x(ncols, Rational(0));
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = aug[k][ncols];
    return x;
}

}  // namespace liesym
