#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mms {

enum class ErrorCode {
    // input / contract violations
    NegativeValue,
    EmptyAgents,
    RaggedMatrix,
    IncompleteAllocation,
    NonPositiveScale,
    ZeroMMS,
    ZeroBundles,
    TooLarge,
    BadPartition,
    NotAPartition,
    NotInN21,
    BadSpec,
    ParseError,
    InvalidArgument,
    // internal invariant breaches (solver bugs if ever raised)
    BelowThreshold,
    IterationCapExceeded,
    Exhausted,
    InvariantViolation,
};

std::string_view error_name(ErrorCode code);

/// True for the codes that signal a broken solver invariant rather than bad input.
bool is_internal(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace mms
