#include "liesym/parser.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace liesym;

TEST_CASE("parse_ode recovers the worked right-hand sides") {
    Ode e1 = parse_ode("dy/dx = y^2/x");
    CHECK(identical(e1.h, parse_expr("y^2/x")));
    REQUIRE(e1.denominators.size() == 1);
    CHECK(identical(e1.denominators[0], parse_expr("x")));

    Ode e2 = parse_ode("dy/dx = y + exp(x)/y");
    CHECK(equivalent(e2.h, parse_expr("y + exp(x)/y")));

    Ode e5 = parse_ode("dy/dx = y/(x - y)");
    REQUIRE(e5.denominators.size() == 1);
    CHECK(identical(e5.denominators[0], normalize(parse_expr("x - y"))));
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        parse_ode("dy/dx = (");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 8);
    }
    CHECK_THROWS_AS(parse_expr("2^^3"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x*"), SyntaxError);
    CHECK_THROWS_AS(parse_ode("dx/dy = x"), SyntaxError);
    CHECK_THROWS_AS(parse_ode("dy/dx = x +"), SyntaxError);
}

TEST_CASE("unknown identifiers are rejected with their offset") {
    try {
        parse_ode("dy/dx = z + 1");
        FAIL("expected UnknownSymbolError");
    } catch (const UnknownSymbolError& e) {
        CHECK(e.offset == 8);
        CHECK(e.name == "z");
    }
    // r, s, C are expression-level symbols, not ODE inputs.
    CHECK_THROWS_AS(parse_ode("dy/dx = r"), UnknownSymbolError);
    CHECK_NOTHROW(parse_expr("r/(1 - r)"));
    CHECK_NOTHROW(parse_expr("C*x + c12"));
}

TEST_CASE("worked example 6 parses") {
    Expr h = parse_expr("(1 - y^2)/(x*y) + 1");
    Ode ode = parse_ode("dy/dx = (1 - y^2)/(x*y) + 1");
    CHECK(identical(ode.h, normalize(h)));
}

TEST_CASE("decimal literals convert exactly") {
    CHECK(identical(parse_expr("0.5"), Expr::constant(Rational(1, 2))));
    CHECK(identical(parse_expr("2.25"), Expr::constant(Rational(9, 4))));
    CHECK(identical(normalize(parse_expr("0.1*x") - parse_expr("x/10")),
                    Expr::integer(0)));
}

TEST_CASE("precedence and associativity") {
    CHECK(identical(normalize(parse_expr("-x^2")), normalize(-parse_expr("x^2"))));
    CHECK(identical(parse_expr("2^3^2"), Expr::integer(512)));
    CHECK(identical(normalize(parse_expr("1 - y^2/x*y")),
                    normalize(parse_expr("1 - (y^2/x)*y"))));
    CHECK(identical(parse_expr("x^-1"), normalize(parse_expr("1/x"))));
}

TEST_CASE("identical input strings give identical trees") {
    const char* s = "y + exp(2*x)/y - x*y";
    CHECK(identical(parse_expr(s), parse_expr(s)));
}
