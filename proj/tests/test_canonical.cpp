#include "liesym/canonical.hpp"

#include "liesym/verify.hpp"

#include <doctest.h>

using namespace liesym;

namespace {

void check_identities(const TangentField& f, const CanonicalPair& p) {
    Expr i1 = normalize(f.xi * diff(p.r, Var::x) + f.eta * diff(p.r, Var::y));
    Expr i2 = normalize(f.xi * diff(p.s, Var::x) + f.eta * diff(p.s, Var::y));
    CHECK(i1.is_zero());
    CHECK(i2.is_one());
}

}  // namespace

TEST_CASE("canonical coordinates for the worked fields") {
    // Example 3: (1, y/2) -> r = y e^{-x/2}, s = x
    TangentField f3{Expr::integer(1), parse_expr("y/2")};
    CanonicalPair p3 = canonical_coords(f3);
    CHECK(identical(p3.r, normalize(parse_expr("y*exp(-1/2*x)"))));
    CHECK(identical(p3.s, normalize(parse_expr("x"))));
    check_identities(f3, p3);

    // Scaling: (x, y) -> r = y/x, s = ln|x|
    TangentField fs{parse_expr("x"), parse_expr("y")};
    CanonicalPair ps = canonical_coords(fs);
    CHECK(identical(ps.r, normalize(parse_expr("y/x"))));
    CHECK(identical(ps.s, normalize(Expr::ln_of(parse_expr("x")))));
    check_identities(fs, ps);

    // Example 6 field: (1/x, -y/x^2) -> r = x y, s = x^2/2
    TangentField f6{parse_expr("1/x"), parse_expr("-y/x^2")};
    CanonicalPair p6 = canonical_coords(f6);
    CHECK(identical(p6.r, normalize(parse_expr("x*y"))));
    CHECK(identical(p6.s, normalize(parse_expr("x^2/2"))));
    check_identities(f6, p6);

    // xi == 0 catalog: (0, y^2) -> r = x, s = -1/y
    TangentField f1{Expr::integer(0), parse_expr("y^2")};
    CanonicalPair p1 = canonical_coords(f1);
    CHECK(identical(p1.r, normalize(parse_expr("x"))));
    CHECK(identical(p1.s, normalize(parse_expr("-1/y"))));
    check_identities(f1, p1);

    // eta == 0 catalog: (y, 0) -> r = y, s = x/y
    TangentField f5{parse_expr("y"), Expr::integer(0)};
    CanonicalPair p5 = canonical_coords(f5);
    CHECK(identical(p5.r, normalize(parse_expr("y"))));
    CHECK(identical(p5.s, normalize(parse_expr("x/y"))));
    check_identities(f5, p5);
}

TEST_CASE("canonical identities hold numerically") {
    TangentField f3{Expr::integer(1), parse_expr("y/2")};
    CanonicalPair p3 = canonical_coords(f3);
    VerifyReport rep = check_canonical_identities(f3, p3, 100, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.samples == 100);
}

TEST_CASE("canonical ODE rewrites in r alone") {
    // Example 3: oracle is the derivative of the stated antiderivative.
    Ode e2 = parse_ode("dy/dx = y + exp(x)/y");
    TangentField f3{Expr::integer(1), parse_expr("y/2")};
    CanonicalPair p3 = canonical_coords(f3);
    Expr F = canonical_ode(e2, p3);
    Expr oracle = diff(normalize(Expr::ln_of(parse_expr("r^2/2 + 1"))), Var::r);
    CHECK(identical(F, oracle));

    // Homogeneous pair: F(r) = 1/(F6(r) - r) for Example 5.
    Ode e5 = parse_ode("dy/dx = y/(x - y)");
    TangentField fs{parse_expr("x"), parse_expr("y")};
    CanonicalPair ps = canonical_coords(fs);
    Expr F5 = canonical_ode(e5, ps);
    Expr f6 = parse_expr("r/(1 - r)");
    CHECK(equivalent(F5, normalize(Expr::integer(1) / (f6 - Expr::variable(Var::r)))));

    // s-independence of the raw quotient.
    VerifyReport rep = check_s_independence(e2, p3, F, 20, 1e-8);
    CHECK(rep.pass);
}

TEST_CASE("flow-aligned coordinates have no canonical ODE") {
    Ode e1 = parse_ode("dy/dx = y^2/x");
    TangentField flow{Expr::integer(1), e1.h};  // Q == 0 field
    CanonicalPair p = canonical_coords(flow);
    CHECK_THROWS_AS(canonical_ode(e1, p), DivisionByZeroLocusError);
}

TEST_CASE("back substitution explicit forms") {
    // Example 3 end-to-end
    Ode e2 = parse_ode("dy/dx = y + exp(x)/y");
    TangentField f3{Expr::integer(1), parse_expr("y/2")};
    CanonicalPair p3 = canonical_coords(f3);
    Expr F = canonical_ode(e2, p3);
    Expr S = integrate_limited(F, Var::r);
    SolutionForm sol = back_substitute(p3, S, e2);
    REQUIRE(sol.kind == SolutionForm::Kind::Explicit);
    REQUIRE(sol.branches.size() == 2);
    Expr plus = normalize(parse_expr("(C*exp(2*x) - 2*exp(x))^(1/2)"));
    Expr minus = normalize(parse_expr("-(C*exp(2*x) - 2*exp(x))^(1/2)"));
    bool has_plus = identical(sol.branches[0], plus) || identical(sol.branches[1], plus);
    bool has_minus = identical(sol.branches[0], minus) || identical(sol.branches[1], minus);
    CHECK(has_plus);
    CHECK(has_minus);

    // y' = 1 with field (0, 1): y = x + C
    Ode one = parse_ode("dy/dx = 1");
    TangentField ft{Expr::integer(0), Expr::integer(1)};
    CanonicalPair pt = canonical_coords(ft);
    Expr Ft = canonical_ode(one, pt);
    Expr St = integrate_limited(Ft, Var::r);
    SolutionForm st = back_substitute(pt, St, one);
    REQUIRE(st.kind == SolutionForm::Kind::Explicit);
    CHECK(equivalent(st.branches.at(0), parse_expr("x + C")));
}

TEST_CASE("back substitution implicit fallback (example 5 via (y, 0))") {
    Ode e5 = parse_ode("dy/dx = y/(x - y)");
    TangentField f{parse_expr("y"), Expr::integer(0)};
    CanonicalPair p = canonical_coords(f);
    Expr F = canonical_ode(e5, p);
    Expr S = integrate_limited(F, Var::r);
    SolutionForm sol = back_substitute(p, S, e5);
    REQUIRE(sol.kind == SolutionForm::Kind::Implicit);
    CHECK(equivalent(sol.implicit_relation, parse_expr("ln(y) + x/y - C")));
    VerifyReport rep = check_solution(e5, sol, {3, 5, 10}, 0.1, 1.0, 1e-6);
    CHECK(rep.pass);
}

TEST_CASE("non-separable fields are rejected") {
    TangentField bad{parse_expr("x + y"), parse_expr("1")};
    CHECK_THROWS_AS(canonical_coords(bad), NotSeparableError);
}

TEST_CASE("cubic s-coordinate still reduces when the quotient is y-free") {
    // (0, 1/(1 + y^2)) is a symmetry of h = x/(1 + y^2); s = y + y^3/3 has
    // no catalog inverse, but ds/dr = x needs only the x inverse.
    Ode ode = parse_ode("dy/dx = x/(1 + y^2)");
    TangentField f{Expr::integer(0), parse_expr("1/(1 + y^2)")};
    REQUIRE(lsc_residual(ode.h, f.xi, f.eta).is_zero());
    CanonicalPair p = canonical_coords(f);
    CHECK(identical(p.r, normalize(parse_expr("x"))));
    CHECK(identical(p.s, normalize(parse_expr("y + y^3/3"))));
    CHECK(!p.inverse_y.has_value());
    Expr F = canonical_ode(ode, p);
    CHECK(identical(F, normalize(Expr::variable(Var::r))));
    Expr S = integrate_limited(F, Var::r);
    SolutionForm sol = back_substitute(p, S, ode);
    CHECK(sol.kind == SolutionForm::Kind::Implicit);
    VerifyReport rep = check_solution(ode, sol, {1, -1, 0.5}, 0.1, 1.0, 1e-6);
    CHECK(rep.pass);
}
