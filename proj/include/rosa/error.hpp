#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rosa {

enum class ErrorCode {
    DuplicateId,
    UnknownParent,
    UnknownConcept,
    KindMismatch,
    CycleDetected,
    MultipleRoots,
    UnknownVertex,
    UnknownGraph,
    UnknownCase,
    UnknownRole,
    InvalidGraph,
    UnresolvedPlaceholder,
    IllegalTransition,
    InvalidPolicy,
    LimitZero,
    PartialMapping,
    InvalidMapping,
    TooLarge,
    StaleVersion,
    UnknownMatch,
    InvalidVerdict,
    IoError,
    ParseError,
    IntegrityError,
    ConfigError,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string & message) :
        std::runtime_error(message),
        code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string & message)
{
    throw Error(code, message);
}

} // namespace rosa
