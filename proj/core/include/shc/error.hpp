#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shc {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    IndexOutOfRange,
    NonConvergence,
    ParseError,
    // feasibility failures (the CLI maps these to exit code 2)
    MajorizationFails,
    MajorizationViolated,
    PartitionMismatch,
    Infeasible,
    NotIrreducible,
    TraceMismatch,
    EdgeVanished,
    WindowsDisjoint,
    ScalarOutsideWindow,
    NoEqualityAtI,
    ScalarSpectrum,
    NotStronglyCorrectable,
    // harness
    InsufficientGrid,
    EmptySample,
    UnknownFamily,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors that report an infeasible request rather than a bug or bad input.
bool is_feasibility_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// Offending index (1-based partial-sum or block index) when the error carries one.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

}  // namespace shc
