#pragma once

#include <cstddef>
#include <vector>

namespace shc {

/// Closed interval [lambda_min, lambda_max] of a Hermitian matrix.
struct SpectrumWindow {
    double lo = 0.0;
    double hi = 0.0;

    double measure() const noexcept { return hi - lo; }
    /// Length of the intersection, zero when disjoint or touching.
    double overlap(const SpectrumWindow& other) const noexcept;
    /// lo + tol < x < hi - tol
    bool interior_contains(double x, double tol = 0.0) const noexcept;
    SpectrumWindow hull(const SpectrumWindow& other) const noexcept;
};

enum class BlockTag { Scalar, StrongSH };

/// Irreducible component, as a contiguous range of permuted positions.
struct ComponentRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    SpectrumWindow window;

    std::size_t size() const noexcept { return end - begin; }
};

struct Block {
    std::size_t begin = 0;  // permuted positions [begin, end)
    std::size_t end = 0;
    BlockTag tag = BlockTag::Scalar;
    SpectrumWindow window;
    std::size_t first_component = 0;  // components [first_component, last_component)
    std::size_t last_component = 0;

    std::size_t size() const noexcept { return end - begin; }
};

/// permutation[position] = original index. Components and blocks are contiguous,
/// disjoint and cover 0..n-1 in permuted order.
struct BlockPartition {
    std::vector<std::size_t> permutation;
    std::vector<ComponentRange> components;
    std::vector<Block> blocks;

    std::size_t size() const noexcept { return permutation.size(); }
    /// Throws PartitionMismatch if the ranges are not contiguous and covering.
    void validate() const;
};

/// Partition of n indices into singleton scalar blocks, identity permutation.
BlockPartition singleton_partition(std::size_t n);

/// Partition with the given block sizes, identity permutation, one component per block.
BlockPartition partition_from_sizes(const std::vector<std::size_t>& sizes);

}  // namespace shc
