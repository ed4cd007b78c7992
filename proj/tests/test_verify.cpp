#include "liesym/verify.hpp"

#include <doctest.h>

using namespace liesym;

TEST_CASE("check_lsc_numeric passes symmetries and fails non-symmetries") {
    Ode e1 = parse_ode("dy/dx = y^2/x");
    TangentField good{parse_expr("x"), Expr::integer(0)};
    VerifyReport rep = check_lsc_numeric(e1, good, 100, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.samples == 100);
    CHECK(rep.max_rel <= 1e-9);

    TangentField bad{Expr::integer(1), Expr::integer(0)};  // residual = -h_x
    VerifyReport repb = check_lsc_numeric(e1, bad, 100, 1e-9);
    CHECK(!repb.pass);

    CHECK_THROWS_AS(check_lsc_numeric(e1, good, 0, 1e-9), InternalError);
}

TEST_CASE("check_nontrivial") {
    Ode e4 = parse_ode("dy/dx = y/x + x");
    CHECK(check_nontrivial(e4, TangentField{Expr::integer(0), parse_expr("x")}));
    CHECK(!check_nontrivial(e4, TangentField{Expr::integer(1), e4.h}));
    Ode ratio = parse_ode("dy/dx = y/x");
    CHECK(!check_nontrivial(ratio, TangentField{parse_expr("x"), parse_expr("y")}));
}

TEST_CASE("check_solution explicit pass and fail") {
    Ode e2 = parse_ode("dy/dx = y + exp(x)/y");
    SolutionForm sol;
    sol.kind = SolutionForm::Kind::Explicit;
    sol.branches = {parse_expr("(C*exp(2*x) - 2*exp(x))^(1/2)"),
                    parse_expr("-(C*exp(2*x) - 2*exp(x))^(1/2)")};
    VerifyReport rep = check_solution(e2, sol, {3, 5, 10}, 0.1, 1.0, 1e-6);
    CHECK(rep.pass);

    SolutionForm wrong;
    wrong.kind = SolutionForm::Kind::Explicit;
    wrong.branches = {parse_expr("(C*exp(2*x))^(1/2)")};
    VerifyReport repw = check_solution(e2, wrong, {3, 5, 10}, 0.1, 1.0, 1e-6);
    CHECK(!repw.pass);

    Ode ratio = parse_ode("dy/dx = y/x");
    SolutionForm lin;
    lin.kind = SolutionForm::Kind::Explicit;
    lin.branches = {parse_expr("C*x")};
    CHECK(check_solution(ratio, lin, {3, 5, 10}, 0.1, 1.0, 1e-6).pass);
}

TEST_CASE("check_solution reports empty domains") {
    Ode e2 = parse_ode("dy/dx = y + exp(x)/y");
    SolutionForm sol;
    sol.kind = SolutionForm::Kind::Explicit;
    // radicand always negative on the grid for C = -1000
    sol.branches = {parse_expr("(C*exp(2*x) - 2*exp(x))^(1/2)")};
    CHECK_THROWS_AS(check_solution(e2, sol, {-1000.0}, 0.1, 1.0, 1e-6),
                    EmptyDomainError);
}

TEST_CASE("check_derivative_fd") {
    SampleConfig cfg;
    CHECK(check_derivative_fd(parse_expr("y^2/x"), Var::x, 1e-6, cfg).pass);
    CHECK(check_derivative_fd(parse_expr("exp(2*x)"), Var::x, 1e-6, cfg).pass);
    VerifyReport rep = check_derivative_fd(parse_expr("1/x"), Var::x, 1e-6, cfg);
    CHECK(rep.pass);  // singular samples are skipped, not failed
}

TEST_CASE("same seed, same report") {
    Ode e1 = parse_ode("dy/dx = y^2/x");
    TangentField f{parse_expr("x"), Expr::integer(0)};
    SampleConfig cfg;
    cfg.seed = 424242;
    VerifyReport a = check_lsc_numeric(e1, f, 50, 1e-9, cfg);
    VerifyReport b = check_lsc_numeric(e1, f, 50, 1e-9, cfg);
    CHECK(a.samples == b.samples);
    CHECK(a.skipped == b.skipped);
    CHECK(a.max_abs == b.max_abs);
    CHECK(a.max_rel == b.max_rel);
}

TEST_CASE("returned fields pass the numeric soundness gate") {
    struct Case {
        const char* ode;
        AnsatzSpec spec;
    };
    std::vector<Case> cases = {
        {"dy/dx = y^2/x", quadratic_ansatz()},
        {"dy/dx = y + exp(x)/y", restrictive_ansatz()},
        {"dy/dx = y/(x - y)", restrictive_ansatz()},
    };
    for (const auto& c : cases) {
        Ode ode = parse_ode(c.ode);
        for (const auto& f : solve_symmetries(ode, c.spec)) {
            VerifyReport rep = check_lsc_numeric(ode, f, 100, 1e-9);
            CHECK(rep.pass);
            CHECK(check_nontrivial(ode, f));
        }
    }
}

TEST_CASE("all samples singular raises") {
    // ln(x - 10) is never defined inside the [-3, 3] sample box.
    Expr e = Expr::ln_of(parse_expr("x - 10"));
    CHECK_THROWS_AS(check_derivative_fd(e, Var::x, 1e-6), AllSamplesSingularError);
}
