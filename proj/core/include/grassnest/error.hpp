#ifndef GRASSNEST_ERROR_HPP
#define GRASSNEST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassnest
{

enum class ErrorCode
{
    NotPrime,
    BadModulus,
    UnsupportedField,
    DivisionByZero,
    DimensionMismatch,
    PreconditionViolated,
    TooLarge,
    AmbientMismatch,
    OddDimension,
    Singular,
    NotAUnit,
    NotSquarefree,
    HypothesisViolated,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    }
    return "Unknown";
}

} // namespace grassnest

#endif
