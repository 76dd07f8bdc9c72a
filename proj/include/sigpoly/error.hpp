#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sigpoly {

enum class ErrorCode {
    NonStochastic,
    NegativeEntry,
    DimensionMismatch,
    TooManyOutputsUsed,
    ParameterOutOfRange,
    NotSurjective,
    BadSplit,
    NotAFacet,
    NotARidge,
    SeedNotFacet,
    BudgetExceeded,
    RegimeNotCovered,
    ResourceBudget,
    NegativeDiscriminant,
    RationalizationFailed,
    BadSigma,
    ParseError,
};

/// Stable identifier used in serialized error documents.
std::string_view to_string(ErrorCode code);

/// Single exception type for every validation and precondition failure in the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sigpoly
