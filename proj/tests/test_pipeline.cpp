#include "liesym/cli.hpp"
#include "liesym/pipeline.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace liesym;

namespace {

RunConfig defaults(const std::string& text) {
    RunConfig cfg;
    cfg.ode_text = text;
    return cfg;
}

}  // namespace

TEST_CASE("bernoulli equation end to end (examples 2-3)") {
    Ode ode = parse_ode("dy/dx = y + exp(x)/y");
    Report rep = solve_pipeline(ode, defaults("dy/dx = y + exp(x)/y"));
    CHECK(rep.exit_code == 0);
    CHECK(rep.ansatz_kind == "restrictive");
    REQUIRE(rep.chosen >= 0);
    TangentField chosen{rep.fields[rep.chosen].xi, rep.fields[rep.chosen].eta};
    TangentField n = normalize_field(chosen);
    CHECK(identical(n.xi, Expr::integer(1)));
    CHECK(identical(n.eta, normalize(parse_expr("y/2"))));
    REQUIRE(rep.solution.has_value());
    CHECK(rep.solution->kind == SolutionForm::Kind::Explicit);
    for (const auto& v : rep.verification) CHECK(v.pass);
}

TEST_CASE("example 1 solves through the xi == 0 field") {
    Ode ode = parse_ode("dy/dx = y^2/x");
    RunConfig cfg = defaults("dy/dx = y^2/x");
    cfg.ansatz = AnsatzKind::Quadratic;
    Report rep = solve_pipeline(ode, cfg);
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.chosen >= 0);
    CHECK(rep.fields[rep.chosen].xi.is_zero());
    REQUIRE(rep.solution.has_value());
    REQUIRE(rep.solution->kind == SolutionForm::Kind::Explicit);
    CHECK(equivalent(rep.solution->branches.at(0), parse_expr("-1/(ln(x) + C)")));
}

TEST_CASE("example 4 prefers the superposition field") {
    Ode ode = parse_ode("dy/dx = y/x + x");
    Report rep = solve_pipeline(ode, defaults("dy/dx = y/x + x"));
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.chosen >= 0);
    CHECK(rep.fields[rep.chosen].xi.is_zero());
    CHECK(identical(rep.fields[rep.chosen].eta, normalize(parse_expr("x"))));
    REQUIRE(rep.solution.has_value());
    CHECK(equivalent(rep.solution->branches.at(0), parse_expr("x^2 + C*x")));
}

TEST_CASE("example 6 via the functional window") {
    Ode ode = parse_ode("dy/dx = (1 - y^2)/(x*y) + 1");
    RunConfig cfg = defaults("dy/dx = (1 - y^2)/(x*y) + 1");
    cfg.ansatz = AnsatzKind::Functional;
    Report rep = solve_pipeline(ode, cfg);
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.fields.size() == 1);
    TangentField n = normalize_field({rep.fields[0].xi, rep.fields[0].eta});
    CHECK(identical(n.xi, normalize(parse_expr("1/x"))));
    CHECK(identical(n.eta, normalize(parse_expr("-y/x^2"))));
    REQUIRE(rep.solution.has_value());
    for (const auto& v : rep.verification) CHECK(v.pass);
}

TEST_CASE("exit 2 when only the homogeneous detector is configured on y' = y/x") {
    Ode ode = parse_ode("dy/dx = y/x");
    RunConfig cfg = defaults("dy/dx = y/x");
    cfg.ladder_override = std::vector<AnsatzSpec>{};  // no ansatz rungs
    cfg.use_linear = false;                           // homogeneous fallback only
    Report rep = solve_pipeline(ode, cfg);
    CHECK(rep.exit_code == 2);
    CHECK(rep.fields.empty());
    REQUIRE(rep.failure.has_value());
    CHECK(rep.failure->stage == "symmetry_search");
}

TEST_CASE("y' = y/x still solves through the full ladder") {
    Ode ode = parse_ode("dy/dx = y/x");
    Report rep = solve_pipeline(ode, defaults("dy/dx = y/x"));
    CHECK(rep.exit_code == 0);
}

TEST_CASE("structured reports are byte-identical for identical configs") {
    std::vector<std::string> args{"dy/dx = y + exp(x)/y", "--format", "structured",
                                  "--seed", "7"};
    std::ostringstream out1, out2, err;
    int c1 = run(args, out1, err);
    int c2 = run(args, out2, err);
    CHECK(c1 == 0);
    CHECK(c2 == 0);
    CHECK(out1.str() == out2.str());
    CHECK(out1.str().find("\"variant\": \"explicit\"") != std::string::npos);
}

TEST_CASE("text and structured outputs carry the same facts") {
    std::ostringstream t, j, err;
    int ct = run({"dy/dx = y/x + x"}, t, err);
    int cj = run({"dy/dx = y/x + x", "--format", "structured"}, j, err);
    CHECK(ct == 0);
    CHECK(cj == 0);
    for (const char* needle : {"x^2 + C*x", "canonical", "lsc_numeric"}) {
        CHECK(t.str().find(needle) != std::string::npos);
        CHECK(j.str().find(needle) != std::string::npos);
    }
}

TEST_CASE("CLI exit codes") {
    std::ostringstream out, err;
    CHECK(run({"dy/dx = ("}, out, err) == 64);
    CHECK(run({"--bogus-flag"}, out, err) == 64);
    CHECK(run({"dy/dx = y + exp(x)/y"}, out, err) == 0);
}

TEST_CASE("quadrature-only reductions exit 1 with the stages recorded") {
    Ode ode = parse_ode("dy/dx = y/x + y^2/x^2 + 1");
    Report rep = solve_pipeline(ode, defaults("dy/dx = y/x + y^2/x^2 + 1"));
    CHECK(rep.exit_code == 1);
    REQUIRE(rep.solution.has_value());
    CHECK(rep.solution->kind == SolutionForm::Kind::Quadrature);
    CHECK(equivalent(rep.solution->quadrature_integrand, parse_expr("1/(r^2 + 1)")));
    REQUIRE(rep.failure.has_value());
    CHECK(rep.failure->stage == "integrate");
}

TEST_CASE("structured report carries the full schema") {
    std::ostringstream out, err;
    REQUIRE(run({"dy/dx = y + exp(x)/y", "--format", "structured"}, out, err) == 0);
    const std::string j = out.str();
    for (const char* key :
         {"\"input\"", "\"ode\"", "\"ansatz\"", "\"kind\"", "\"window\"", "\"fields\"",
          "\"xi\"", "\"eta\"", "\"Q\"", "\"chosen\"", "\"canonical\"", "\"canonical_ode\"",
          "\"solution\"", "\"variant\"", "\"expressions\"", "\"constant\"",
          "\"verification\"", "\"stages_completed\"", "\"failure\"", "\"exit_code\""}) {
        CHECK_MESSAGE(j.find(key) != std::string::npos, key);
    }
}

TEST_CASE("window flag validation") {
    std::ostringstream out, err;
    CHECK(run({"dy/dx = y/x", "--ansatz", "functional", "--window", "2", "-2"}, out,
              err) == 64);
}

TEST_CASE("every expression in a structured report re-parses") {
    std::ostringstream out, err;
    REQUIRE(run({"dy/dx = y + exp(x)/y", "--format", "structured"}, out, err) == 0);
    auto j = nlohmann::json::parse(out.str());
    auto parse_ok = [](const std::string& s) {
        CHECK_NOTHROW(parse_expr(s));
    };
    for (const auto& f : j["fields"]) {
        parse_ok(f["xi"].get<std::string>());
        parse_ok(f["eta"].get<std::string>());
        parse_ok(f["Q"].get<std::string>());
    }
    parse_ok(j["canonical"]["r"].get<std::string>());
    parse_ok(j["canonical"]["s"].get<std::string>());
    parse_ok(j["canonical_ode"].get<std::string>());
    for (const auto& e : j["solution"]["expressions"]) {
        std::string s = e.get<std::string>();
        if (s.rfind("y = ", 0) == 0) s = s.substr(4);
        auto eq = s.rfind(" = 0");
        if (eq != std::string::npos && eq == s.size() - 4) s = s.substr(0, eq);
        parse_ok(s);
    }
}
