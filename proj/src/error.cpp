#include "gamehedge/error.hpp"

namespace gamehedge {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SubdivisionLimit: return "SubdivisionLimit";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::DegenerateMaturity: return "DegenerateMaturity";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularJacobian: return "SingularJacobian";
        case ErrorCode::TrivialOption: return "TrivialOption";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace gamehedge
