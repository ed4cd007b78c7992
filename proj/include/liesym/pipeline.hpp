#pragma once

#include "liesym/canonical.hpp"
#include "liesym/special_forms.hpp"
#include "liesym/symmetry.hpp"
#include "liesym/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesym {

enum class AnsatzKind { Restrictive, Quadratic, Functional, Auto };
enum class OutputFormat { Text, Structured };

struct RunConfig {
    std::string ode_text;
    AnsatzKind ansatz = AnsatzKind::Auto;
    int window_lo = -2, window_hi = 2;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 12345;
    int samples = 100;
    double tol = 1e-6;           // finite-difference / solution residuals
    double tol_identity = 1e-9;  // numeric confirmation of symbolic zeros
    // Special-form fallbacks (always on from the CLI; tests may restrict).
    bool use_homogeneous = true;
    bool use_linear = true;
    // Replaces the ansatz ladder entirely when set (library-level hook).
    std::optional<std::vector<AnsatzSpec>> ladder_override;
};

struct StageFailure {
    std::string stage;
    std::string reason;
};

struct FieldInfo {
    Expr xi, eta, q;
};

// Exit codes: 0 solution found and verified, 1 symmetries found but no
// verified closed form, 2 no nontrivial symmetry, (64 reserved for usage
// errors in the CLI).
struct Report {
    std::string ode_text;
    Expr h;
    std::string ansatz_kind;  // rung that produced the fields
    int window_lo = 0, window_hi = 0;
    std::vector<FieldInfo> fields;
    int chosen = -1;
    std::optional<CanonicalPair> canonical;
    std::optional<Expr> canonical_f;
    std::optional<Expr> antiderivative;
    std::optional<SolutionForm> solution;
    std::vector<VerifyReport> verification;
    std::vector<std::string> stages_completed;
    std::optional<StageFailure> failure;
    int exit_code = 2;
};

Report solve_pipeline(const Ode& ode, const RunConfig& cfg);

}  // namespace liesym
