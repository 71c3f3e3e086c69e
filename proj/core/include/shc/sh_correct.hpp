#pragma once

#include <span>

#include "shc/certificate.hpp"
#include "shc/linalg.hpp"

namespace shc {

/// Builds B with diag(B) = diag(A), spectrum lambda_tilde and ||B - A||_F = O(eps^{1/2}),
/// eps = ||lambda_tilde - lambda(A)||. A is split by block_decompose, block traces are
/// balanced with a min-index priority queue over blocks, and every block is then corrected
/// as a strongly correctable matrix. The certificate records the partition.
///
/// Throws MajorizationViolated with the 1-based index of the first failing block prefix.
CorrectionCertificate schur_horn_correct(const DenseHermitian& a, std::span<const double> lambda_tilde);

/// schur_horn_correct with complex rotations throughout; real inputs are promoted.
CorrectionCertificate schur_horn_correct_hermitian(const DenseHermitian& a, std::span<const double> lambda_tilde);

}  // namespace shc
