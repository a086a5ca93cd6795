#pragma once

#include <stdexcept>
#include <string>

namespace wka {

/// Exit codes used by the CLI: 0 success, 2 validation, 3 mathematical
/// precondition, 4 numerical non-convergence.
enum class ErrorCode : int {
    validation = 2,
    precondition = 3,
    non_convergence = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string kind, const std::string& msg)
        : std::runtime_error(msg), code_(code), kind_(std::move(kind)) {}

    ErrorCode code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCode code_;
    std::string kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg, const std::string& kind = "validation")
        : Error(ErrorCode::validation, kind, msg) {}
};

struct MalformedElementError : ValidationError {
    explicit MalformedElementError(const std::string& msg) : ValidationError(msg, "malformed-element") {}
};

struct MismatchError : ValidationError {
    explicit MismatchError(const std::string& msg) : ValidationError(msg, "mismatch") {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg, const std::string& kind = "precondition")
        : Error(ErrorCode::precondition, kind, msg) {}
};

struct GrowthPreconditionError : PreconditionError {
    explicit GrowthPreconditionError(const std::string& msg) : PreconditionError(msg, "growth-precondition") {}
};

struct DecayPreconditionError : PreconditionError {
    explicit DecayPreconditionError(const std::string& msg) : PreconditionError(msg, "decay-precondition") {}
};

struct NotInvertibleError : PreconditionError {
    explicit NotInvertibleError(const std::string& msg) : PreconditionError(msg, "not-invertible-on-window") {}
};

struct InsufficientDataError : PreconditionError {
    explicit InsufficientDataError(const std::string& msg) : PreconditionError(msg, "insufficient-data") {}
};

struct ResourceLimitError : PreconditionError {
    explicit ResourceLimitError(const std::string& msg) : PreconditionError(msg, "resource-limit") {}
};

struct NonConvergenceError : Error {
    explicit NonConvergenceError(const std::string& msg) : Error(ErrorCode::non_convergence, "non-convergence", msg) {}
};

}  // namespace wka
