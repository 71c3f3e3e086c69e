#include "shc/error.hpp"

namespace shc {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MajorizationFails: return "MajorizationFails";
        case ErrorCode::MajorizationViolated: return "MajorizationViolated";
        case ErrorCode::PartitionMismatch: return "PartitionMismatch";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::TraceMismatch: return "TraceMismatch";
        case ErrorCode::EdgeVanished: return "EdgeVanished";
        case ErrorCode::WindowsDisjoint: return "WindowsDisjoint";
        case ErrorCode::ScalarOutsideWindow: return "ScalarOutsideWindow";
        case ErrorCode::NoEqualityAtI: return "NoEqualityAtI";
        case ErrorCode::ScalarSpectrum: return "ScalarSpectrum";
        case ErrorCode::NotStronglyCorrectable: return "NotStronglyCorrectable";
        case ErrorCode::InsufficientGrid: return "InsufficientGrid";
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::UnknownFamily: return "UnknownFamily";
    }
    return "Unknown";
}

bool is_feasibility_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MajorizationFails:
        case ErrorCode::MajorizationViolated:
        case ErrorCode::PartitionMismatch:
        case ErrorCode::Infeasible:
        case ErrorCode::NotIrreducible:
        case ErrorCode::TraceMismatch:
        case ErrorCode::EdgeVanished:
        case ErrorCode::WindowsDisjoint:
        case ErrorCode::ScalarOutsideWindow:
        case ErrorCode::NoEqualityAtI:
        case ErrorCode::ScalarSpectrum:
        case ErrorCode::NotStronglyCorrectable:
            return true;
        default:
            return false;
    }
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

}  // namespace shc
