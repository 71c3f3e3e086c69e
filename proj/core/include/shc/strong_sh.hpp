#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shc/certificate.hpp"
#include "shc/linalg.hpp"
#include "shc/partition.hpp"

namespace shc {

/// 1e-12 ||A||_F: entries at or below this are structural zeros.
double default_tau_struct(const DenseHermitian& a);

/// Components of the graph with an edge (i, j) whenever |a_ij| > tau_struct.
/// Each component is sorted; components are ordered by their smallest member.
std::vector<std::vector<std::size_t>> connected_components(const DenseHermitian& a, double tau_struct);
std::vector<std::vector<std::size_t>> connected_components(const DenseHermitian& a);

/// [lambda_min, lambda_max].
SpectrumWindow spectrum_window(const DenseHermitian& a);

/// Corrects an irreducible matrix towards spectrum lambda_tilde with the diagonal of A kept:
/// eigenbasis of A applied to diag(lambda_tilde), then one rotation per spanning-tree edge,
/// deepest leaf first.
///
/// Throws NotIrreducible, TraceMismatch, or EdgeVanished when a tree edge has decayed to a
/// structural zero (the perturbation is too large).
CorrectionCertificate correct_irreducible(const DenseHermitian& a, std::span<const double> lambda_tilde);

/// Corrects blkdiag(A1, A2) where each block is strongly correctable on its own and the two
/// spectrum windows overlap with positive measure. lambda_tilde1 and lambda_tilde2 are the
/// perturbed spectra of the blocks; only their total has to match trace(A1) + trace(A2).
///
/// Throws WindowsDisjoint.
CorrectionCertificate merge_blocks(const DenseHermitian& a1, const DenseHermitian& a2,
                                   std::span<const double> lambda_tilde1, std::span<const double> lambda_tilde2);

/// merge_blocks with a 1x1 second block; d2 must lie strictly inside the window of A1.
///
/// Throws ScalarOutsideWindow.
CorrectionCertificate absorb_scalar(const DenseHermitian& a1, double d2, std::span<const double> lambda_tilde1,
                                    double lambda_tilde2);

/// Reorders A into blocks: irreducible components sorted by (lambda_min, lambda_max) and
/// greedily merged while the next component overlaps the running window with positive
/// measure, or is a scalar strictly inside it.
BlockPartition block_decompose(const DenseHermitian& a, double tau_struct);
BlockPartition block_decompose(const DenseHermitian& a);

/// Perturbation of lambda that keeps the trace but violates the i-th (1-based)
/// majorization inequality against d, which must hold with equality.
/// Inputs are sorted internally; the result is ascending.
///
/// Throws NoEqualityAtI, ScalarSpectrum, IndexOutOfRange.
std::vector<double> gen_violation_perturbation(std::span<const double> lambda, std::span<const double> d,
                                               std::size_t i, double eps);

/// Correction of a strongly correctable matrix: a scalar matrix, an irreducible matrix,
/// or a single block produced by block_decompose. The chain factors as G2 Q G1.
///
/// Throws NotStronglyCorrectable, TraceMismatch.
CorrectionCertificate strong_sh_correct(const DenseHermitian& a, std::span<const double> lambda_tilde);

}  // namespace shc
