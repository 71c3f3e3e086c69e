#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "shc/certificate.hpp"
#include "shc/givens.hpp"

namespace shc {

/// Which queued deficit index to pop and which quadratic root to take.
/// The defaults give the deterministic min-index discipline with the small root.
struct QueueDiscipline {
    /// Receives the queue size, returns the rank (0 = smallest index) to pop.
    std::function<std::size_t(std::size_t)> pick;
    std::function<RootChoice()> root;
};

/// Builds a real symmetric matrix with diagonal `d` and spectrum `lambda_tilde`
/// (lambda_tilde majorized by d) by priority-queue Givens corrections starting from
/// diag(lambda_tilde) aligned to the ascending order of d. Inputs may be in any order;
/// the result is reported in the caller's index order.
///
/// Throws MajorizationViolated carrying the first failing partial-sum index.
CorrectionCertificate correct_diagonal(std::span<const double> d, std::span<const double> lambda_tilde);
CorrectionCertificate correct_diagonal(std::span<const double> d, std::span<const double> lambda_tilde,
                                       const QueueDiscipline& discipline);

/// The step sequence of correct_diagonal.
std::vector<CorrectionStep> correction_trace(std::span<const double> d, std::span<const double> lambda_tilde);

}  // namespace shc
