#pragma once

// Shared correction machinery for block-structured matrices in permuted coordinates.

#include <cstddef>
#include <span>
#include <vector>

#include "shc/certificate.hpp"
#include "shc/linalg.hpp"
#include "shc/partition.hpp"

namespace shc::detail {

/// Binary merge hierarchy over component indices.
struct MergeTree {
    struct Node {
        bool leaf = true;
        std::size_t component = 0;
        std::size_t left = 0;
        std::size_t right = 0;
    };
    std::vector<Node> nodes;
    std::size_t root = 0;
};

/// ((c_first, c_first+1), c_first+2), ...
MergeTree left_deep_tree(std::size_t first, std::size_t last);
MergeTree join(const MergeTree& left, const MergeTree& right);

struct ComponentBasis {
    std::vector<double> eigenvalues;  // ascending
    CMatrix basis;                    // columns are eigenvectors
};

/// Eigendecomposition of every component's principal submatrix.
std::vector<ComponentBasis> component_bases(const DenseHermitian& a, const std::vector<ComponentRange>& components);

/// Writes ascending `lambda_tilde` into start[] at the eigen-positions of the components
/// covering [begin, end), ordered by (eigenvalue, position).
void assign_spectrum(std::vector<double>& start, const std::vector<ComponentRange>& components,
                     const std::vector<ComponentBasis>& bases, std::size_t begin, std::size_t end,
                     std::span<const double> lambda_tilde);

struct EngineBlock {
    std::size_t begin = 0;
    std::size_t end = 0;
    MergeTree tree;
};

struct EngineResult {
    DenseHermitian m;
    std::vector<Transform> chain;
    std::vector<CorrectionStep> steps;
};

/// From diag(start): block-level trace balancing, then compensation down each merge tree
/// (G1), component eigenbases (Q), then spanning-tree corrections inside each component (G2).
/// `a` must be block diagonal over `components`.
EngineResult run_engine(const DenseHermitian& a, const std::vector<ComponentRange>& components,
                        const std::vector<ComponentBasis>& bases, const std::vector<EngineBlock>& blocks,
                        std::span<const double> start, double tau_struct);

/// Maps an engine result back through `permutation` (position -> original index) and fills residuals.
CorrectionCertificate finish_certificate(EngineResult&& r, std::span<const std::size_t> permutation,
                                         std::span<const double> start, const DenseHermitian& original,
                                         std::span<const double> lambda_tilde);

struct SpectrumGroup {
    std::size_t begin = 0;  // permuted positions, aligned with component boundaries
    std::size_t end = 0;
    std::vector<double> lambda_tilde;
};

/// Runs the engine on A reordered by `partition`, with one merge tree per block and the
/// perturbed spectrum dealt to `groups`. Returns the certificate in A's coordinates.
CorrectionCertificate correct_in_partition(const DenseHermitian& a, const BlockPartition& partition,
                                           const std::vector<MergeTree>& trees,
                                           const std::vector<SpectrumGroup>& groups, double tau_struct);

}  // namespace shc::detail
