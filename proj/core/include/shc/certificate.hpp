#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "shc/linalg.hpp"
#include "shc/partition.hpp"

namespace shc {

/// Unitary acting on a subset of coordinates (an eigenbasis block).
struct BasisChange {
    std::vector<std::size_t> indices;
    CMatrix unitary;
};

/// One factor of a certificate chain; applied as M <- T M T*.
using Transform = std::variant<GivensParams, BasisChange>;

/// One priority-queue correction: the deficit index i is rotated against the surplus index j.
struct CorrectionStep {
    std::size_t i = 0;
    std::size_t j = 0;
    GivensParams rotation;
    double h_i = 0.0;  // updated perturbations after the step
    double h_j = 0.0;
};

/// Output matrix together with everything needed to rebuild it from diag(start_diagonal).
///
/// The chain factors as G2 Q G1: rotations before the first BasisChange form G1, the
/// BasisChange factors form Q and rotations after the last one form G2. A chain with no
/// BasisChange is all G1.
struct CorrectionCertificate {
    MatrixKind kind = MatrixKind::RealSymmetric;
    std::vector<double> start_diagonal;
    std::vector<Transform> chain;
    DenseHermitian result;
    std::vector<CorrectionStep> steps;
    std::optional<BlockPartition> partition;

    double diag_residual = 0.0;         // max |diag(result) - target diagonal|
    double spectrum_residual = 0.0;     // max |eig(result) - sort(lambda_tilde)|
    double distance_to_original = 0.0;  // ||result - original||_F
    double gnorm1 = 0.0;                // ||G1 - I||_F
    double gnorm2 = 0.0;                // ||G2 - I||_F

    std::size_t rotation_count() const;
};

void apply_transform(DenseHermitian& m, const Transform& t);

/// diag(start) conjugated by every factor of `chain` in order.
DenseHermitian replay_chain(MatrixKind kind, std::span<const double> start, std::span<const Transform> chain);

struct FactorNorms {
    double g1 = 0.0;
    double g2 = 0.0;
};
FactorNorms factor_norms(std::span<const Transform> chain, std::size_t n);

/// Relabels coordinates: index k becomes map[k].
Transform remap(const Transform& t, std::span<const std::size_t> map);

/// Fills the residual fields from an independent eigen-decomposition of `cert.result`.
void fill_residuals(CorrectionCertificate& cert, const DenseHermitian& original,
                    std::span<const double> target_diagonal, std::span<const double> lambda_tilde);

}  // namespace shc
