#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gamehedge {

enum class ErrorCode {
    InvalidArgument,
    SubdivisionLimit,
    NonFinite,
    DegenerateMaturity,
    NoConvergence,
    SingularJacobian,
    TrivialOption,
    DegenerateDenominator,
    Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gamehedge
