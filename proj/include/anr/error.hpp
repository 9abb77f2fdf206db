#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anr {

enum class ErrorCode {
    NotHermitian,
    NotPSD,
    NoConvergence,
    DimensionMismatch,
    NoAdjoint,
    EmptyRange,
    NotAPositive,
    UnsupportedExponent,
    RequiresStrictPositivity,
    UnknownCheckId,
    BadRank,
    ReproMismatch,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NoAdjoint: return "NoAdjoint";
        case ErrorCode::EmptyRange: return "EmptyRange";
        case ErrorCode::NotAPositive: return "NotAPositive";
        case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
        case ErrorCode::RequiresStrictPositivity: return "RequiresStrictPositivity";
        case ErrorCode::UnknownCheckId: return "UnknownCheckId";
        case ErrorCode::BadRank: return "BadRank";
        case ErrorCode::ReproMismatch: return "ReproMismatch";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace anr
