#include "liesym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace liesym {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* variant_name(SolutionForm::Kind k) {
    switch (k) {
        case SolutionForm::Kind::Explicit: return "explicit";
        case SolutionForm::Kind::Implicit: return "implicit";
        case SolutionForm::Kind::Quadrature: return "quadrature";
    }
    return "?";
}

ordered_json verify_json(const VerifyReport& v) {
    ordered_json j;
    j["check"] = v.check;
    j["samples"] = v.samples;
    j["skipped"] = v.skipped;
    j["max_abs"] = v.max_abs;
    j["max_rel"] = v.max_rel;
    j["tolerance"] = v.tolerance;
    j["pass"] = v.pass;
    return j;
}

ordered_json solution_json(const SolutionForm& s) {
    ordered_json j;
    j["variant"] = variant_name(s.kind);
    switch (s.kind) {
        case SolutionForm::Kind::Explicit: {
            ordered_json arr = ordered_json::array();
            for (const auto& b : s.branches) arr.push_back("y = " + render(b));
            j["expressions"] = arr;
            break;
        }
        case SolutionForm::Kind::Implicit:
            j["expressions"] = {render(s.implicit_relation) + " = 0"};
            break;
        case SolutionForm::Kind::Quadrature:
            j["expressions"] = {"s = int (" + render(s.quadrature_integrand) + ") dr + C",
                                "r = " + render(s.quad_r), "s = " + render(s.quad_s)};
            break;
    }
    j["constant"] = s.constant_name;
    return j;
}

}  // namespace

std::string report_to_json(const Report& rep) {
    ordered_json j;
    j["input"]["ode"] = rep.ode_text;
    j["ansatz"]["kind"] = rep.ansatz_kind.empty() ? "none" : rep.ansatz_kind;
    j["ansatz"]["window"] = {rep.window_lo, rep.window_hi};
    ordered_json fields = ordered_json::array();
    for (const auto& f : rep.fields) {
        ordered_json fj;
        fj["xi"] = render(f.xi);
        fj["eta"] = render(f.eta);
        fj["Q"] = render(f.q);
        fields.push_back(fj);
    }
    j["fields"] = fields;
    j["chosen"] = rep.chosen;
    if (rep.canonical) {
        j["canonical"]["r"] = render(rep.canonical->r);
        j["canonical"]["s"] = render(rep.canonical->s);
    } else {
        j["canonical"] = nullptr;
    }
    j["canonical_ode"] = rep.canonical_f ? ordered_json(render(*rep.canonical_f))
                                         : ordered_json(nullptr);
    j["solution"] = rep.solution ? solution_json(*rep.solution) : ordered_json(nullptr);
    ordered_json ver = ordered_json::array();
    for (const auto& v : rep.verification) ver.push_back(verify_json(v));
    j["verification"] = ver;
    j["stages_completed"] = rep.stages_completed;
    if (rep.failure) {
        j["failure"]["stage"] = rep.failure->stage;
        j["failure"]["reason"] = rep.failure->reason;
    } else {
        j["failure"] = nullptr;
    }
    j["exit_code"] = rep.exit_code;
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& rep) {
    std::ostringstream os;
    os << "ode: dy/dx = " << render(rep.h) << "\n";
    if (!rep.ansatz_kind.empty()) {
        os << "ansatz: " << rep.ansatz_kind;
        if (rep.ansatz_kind == "functional")
            os << " [" << rep.window_lo << ", " << rep.window_hi << "]";
        os << "\n";
    }
    if (!rep.fields.empty()) {
        os << "fields:\n";
        for (std::size_t i = 0; i < rep.fields.size(); ++i) {
            const auto& f = rep.fields[i];
            os << "  [" << i << "] xi = " << render(f.xi) << ", eta = " << render(f.eta)
               << "  (Q = " << render(f.q) << ")\n";
        }
    }
    if (rep.chosen >= 0) os << "chosen: " << rep.chosen << "\n";
    if (rep.canonical)
        os << "canonical: r = " << render(rep.canonical->r)
           << ", s = " << render(rep.canonical->s) << "\n";
    if (rep.canonical_f) os << "canonical ode: ds/dr = " << render(*rep.canonical_f) << "\n";
    if (rep.antiderivative) os << "antiderivative: S(r) = " << render(*rep.antiderivative) << "\n";
    if (rep.solution) {
        const auto& s = *rep.solution;
        os << "solution (" << variant_name(s.kind) << "):\n";
        switch (s.kind) {
            case SolutionForm::Kind::Explicit:
                for (const auto& b : s.branches) os << "  y = " << render(b) << "\n";
                break;
            case SolutionForm::Kind::Implicit:
                os << "  " << render(s.implicit_relation) << " = 0\n";
                break;
            case SolutionForm::Kind::Quadrature:
                os << "  s = int (" << render(s.quadrature_integrand) << ") dr + C with r = "
                   << render(s.quad_r) << ", s = " << render(s.quad_s) << "\n";
                break;
        }
    }
    if (!rep.verification.empty()) {
        os << "verification:\n";
        for (const auto& v : rep.verification) {
            os << "  " << v.check << ": " << (v.pass ? "pass" : "FAIL") << " ("
               << v.samples << " samples, max rel " << std::scientific
               << std::setprecision(2) << v.max_rel << std::defaultfloat << ", skipped "
               << v.skipped << ")\n";
        }
    }
    os << "stages:";
    for (const auto& s : rep.stages_completed) os << " " << s;
    os << "\n";
    if (rep.failure)
        os << "failure at " << rep.failure->stage << ": " << rep.failure->reason << "\n";
    os << "exit: " << rep.exit_code << "\n";
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Find Lie point symmetries of dy/dx = h(x, y) and reduce to quadrature"};
    app.name("solve");

    std::string ode_text;
    std::string ansatz = "auto";
    std::vector<int> window{-2, 2};
    std::string format = "text";
    std::uint64_t seed = 12345;
    int samples = 100;
    double tol = 1e-6;

    app.add_option("ode", ode_text, "ODE in the form \"dy/dx = <expr>\"")->required();
    app.add_option("--ansatz", ansatz, "restrictive | quadratic | functional | auto")
        ->check(CLI::IsMember({"restrictive", "quadratic", "functional", "auto"}));
    app.add_option("--window", window, "functional ansatz x-power window MIN MAX")
        ->expected(2);
    app.add_option("--format", format, "text | structured")
        ->check(CLI::IsMember({"text", "structured", "json-like-structured"}));
    app.add_option("--seed", seed, "verification sampling seed");
    app.add_option("--samples", samples, "verification sample count")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "solution / finite-difference tolerance");

    std::vector<const char*> argv;
    argv.push_back("solve");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    RunConfig cfg;
    cfg.ode_text = ode_text;
    cfg.window_lo = window[0];
    cfg.window_hi = window[1];
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.tol = tol;
    if (ansatz == "restrictive") cfg.ansatz = AnsatzKind::Restrictive;
    else if (ansatz == "quadratic") cfg.ansatz = AnsatzKind::Quadratic;
    else if (ansatz == "functional") cfg.ansatz = AnsatzKind::Functional;
    else cfg.ansatz = AnsatzKind::Auto;
    cfg.format = format == "text" ? OutputFormat::Text : OutputFormat::Structured;
    if (cfg.window_lo > cfg.window_hi) {
        err << "usage error: --window MIN must be <= MAX\n";
        return 64;
    }

    Ode ode;
    try {
        ode = parse_ode(ode_text);
    } catch (const SyntaxError& e) {
        if (cfg.format == OutputFormat::Structured) {
            ordered_json j;
            j["input"]["ode"] = ode_text;
            j["error"]["kind"] = "syntax";
            j["error"]["offset"] = e.offset;
            j["error"]["expected"] = e.expected;
            j["error"]["message"] = e.what();
            out << j.dump(2) << "\n";
        } else {
            err << e.what() << "\n";
        }
        return 64;
    } catch (const UnknownSymbolError& e) {
        if (cfg.format == OutputFormat::Structured) {
            ordered_json j;
            j["input"]["ode"] = ode_text;
            j["error"]["kind"] = "unknown_symbol";
            j["error"]["offset"] = e.offset;
            j["error"]["symbol"] = e.name;
            j["error"]["message"] = e.what();
            out << j.dump(2) << "\n";
        } else {
            err << e.what() << "\n";
        }
        return 64;
    } catch (const Error& e) {
        // e.g. a division by zero folded during normalization
        if (cfg.format == OutputFormat::Structured) {
            ordered_json j;
            j["input"]["ode"] = ode_text;
            j["error"]["kind"] = "invalid_input";
            j["error"]["message"] = e.what();
            out << j.dump(2) << "\n";
        } else {
            err << e.what() << "\n";
        }
        return 64;
    }

    Report rep;
    try {
        rep = solve_pipeline(ode, cfg);
    } catch (const Error& e) {
        rep.ode_text = cfg.ode_text;
        rep.h = ode.h;
        rep.stages_completed = {"parse"};
        rep.failure = StageFailure{"pipeline", e.what()};
        rep.exit_code = 1;
    }
    out << (cfg.format == OutputFormat::Structured ? report_to_json(rep)
                                                   : report_to_text(rep));
    return rep.exit_code;
}

}  // namespace liesym
