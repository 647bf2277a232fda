#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace univoque {

enum class ErrorCode {
    InvalidInput,
    NotAnInterval,
    DegenerateAttractor,
    DegenerateSwitchRegion,
    NoOverlap,
    BoundaryTouch,
    OutsideAttractor,
    OutOfDomain,
    NoRoot,
    RoundTripFailed,
    FiniteGreedyExpansion,
    NotFound,
    Stuck,
    NonPositiveDelta,
    AllForbidden,
    Intractable,
    EmptyGraph,
    ConvergenceFailure,
    Mismatch,
};

std::string_view to_string(ErrorCode code);

// Process exit status for a failure: 2 for InvalidInput, then one per code in
// declaration order (Mismatch is 20). 1 is left for unexpected failures.
constexpr int exit_code(ErrorCode code) {
    return 2 + static_cast<int>(code);
}

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a documented exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace univoque
