#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace setfun {

enum class ErrorKind {
    DomainMismatch,
    AmbientMismatch,
    NotInjective,
    NoLeftInverse,
    CarrierMismatch,
    NotContinuous,
    TooLarge,
    SignatureMismatch,
    K1Violation,
    SkeletonMismatch,
    SkeletonExceeded,
    LawViolation,
    NotKObjects,
    RankTooLow,
    InvalidValue,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NoLeftInverse: return "NoLeftInverse";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::K1Violation: return "K1Violation";
    case ErrorKind::SkeletonMismatch: return "SkeletonMismatch";
    case ErrorKind::SkeletonExceeded: return "SkeletonExceeded";
    case ErrorKind::LawViolation: return "LawViolation";
    case ErrorKind::NotKObjects: return "NotKObjects";
    case ErrorKind::RankTooLow: return "RankTooLow";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every precondition failure in the library is reported with this type; `kind()`
/// lets callers (and the CLI exit-code mapping) branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what)
        , kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace setfun
