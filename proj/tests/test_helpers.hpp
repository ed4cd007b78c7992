#pragma once

#include "liesym/expr.hpp"
#include "liesym/parser.hpp"

#include <random>
#include <vector>

namespace liesym::testing {

// Seeded generator of expressions from the Laurent class: sums of
// c * x^i * y^j * exp(k x) with small exponents.
class LaurentGen {
public:
    explicit LaurentGen(std::uint64_t seed) : rng_(seed) {}

    Expr next(int max_terms = 4) {
        std::uniform_int_distribution<int> nterms(1, max_terms);
        std::vector<Expr> terms;
        int n = nterms(rng_);
        for (int i = 0; i < n; ++i) terms.push_back(term());
        return Expr::sum(std::move(terms));
    }

    // Adds quotients by simple polynomials.
    Expr next_rational(int max_terms = 3) {
        Expr num = next(max_terms);
        switch (pick(4)) {
            case 0: return num;
            case 1: return num / Expr::variable(Var::x);
            case 2: return num / Expr::variable(Var::y);
            default:
                return num / (Expr::variable(Var::x) +
                              Expr::constant(Rational(pick(3) + 1)));
        }
    }

    int pick(int n) {
        std::uniform_int_distribution<int> d(0, n - 1);
        return d(rng_);
    }

private:
    Expr term() {
        std::uniform_int_distribution<int> small(-3, 3), kern(-2, 2), coeff(-4, 4);
        int c = coeff(rng_);
        if (c == 0) c = 1;
        std::vector<Expr> f{Expr::integer(c)};
        int xi = small(rng_), yi = small(rng_), k = kern(rng_);
        if (xi != 0) f.push_back(Expr::pow(Expr::variable(Var::x), Rational(xi)));
        if (yi != 0) f.push_back(Expr::pow(Expr::variable(Var::y), Rational(yi)));
        if (k != 0)
            f.push_back(Expr::exp_of(Expr::integer(k) * Expr::variable(Var::x)));
        return Expr::product(std::move(f));
    }

    std::mt19937_64 rng_;
};

}  // namespace liesym::testing
