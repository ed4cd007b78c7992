#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesym {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parser diagnostics carry the byte offset of the offending token.
struct SyntaxError : Error {
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);
    std::size_t offset;
    std::vector<std::string> expected;
};

struct UnknownSymbolError : Error {
    UnknownSymbolError(std::size_t offset, const std::string& name);
    std::size_t offset;
    std::string name;
};

// Expression is not a finite Laurent polynomial in x, y and one exp kernel.
struct NonLaurentError : Error {
    explicit NonLaurentError(const std::string& msg) : Error(msg) {}
};

// Numeric evaluation hit a denominator (or ln argument) below the guard.
struct SingularPointError : Error {
    explicit SingularPointError(const std::string& msg) : Error(msg) {}
};

// Non-real result (even root of a negative value) or ln(0) et al.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct NotSeparableError : Error {
    explicit NotSeparableError(const std::string& msg) : Error(msg) {}
};

struct IntegrationFailedError : Error {
    explicit IntegrationFailedError(const std::string& msg) : Error(msg) {}
};

struct NotAutonomousError : Error {
    explicit NotAutonomousError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroLocusError : Error {
    explicit DivisionByZeroLocusError(const std::string& msg) : Error(msg) {}
};

struct TrivialSymmetryError : Error {
    explicit TrivialSymmetryError(const std::string& msg) : Error(msg) {}
};

struct EmptyDomainError : Error {
    explicit EmptyDomainError(const std::string& msg) : Error(msg) {}
};

struct AllSamplesSingularError : Error {
    explicit AllSamplesSingularError(const std::string& msg) : Error(msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace liesym
