#include "shc/partition.hpp"

#include <algorithm>
#include <numeric>

#include "shc/error.hpp"

namespace shc {

double SpectrumWindow::overlap(const SpectrumWindow& other) const noexcept {
    return std::max(0.0, std::min(hi, other.hi) - std::max(lo, other.lo));
}

bool SpectrumWindow::interior_contains(double x, double tol) const noexcept {
    return lo + tol < x && x < hi - tol;
}

SpectrumWindow SpectrumWindow::hull(const SpectrumWindow& other) const noexcept {
    return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

void BlockPartition::validate() const {
    const std::size_t n = permutation.size();
    std::vector<bool> seen(n, false);
    for (auto p : permutation) {
        if (p >= n || seen[p]) throw Error(ErrorCode::PartitionMismatch, "permutation is not a bijection");
        seen[p] = true;
    }
    std::size_t next = 0;
    for (const auto& c : components) {
        if (c.begin != next || c.end <= c.begin) throw Error(ErrorCode::PartitionMismatch, "component ranges");
        next = c.end;
    }
    if (!components.empty() && next != n) throw Error(ErrorCode::PartitionMismatch, "components do not cover");
    next = 0;
    std::size_t comp = 0;
    for (const auto& b : blocks) {
        if (b.begin != next || b.end <= b.begin) throw Error(ErrorCode::PartitionMismatch, "block ranges");
        if (!components.empty()) {
            if (b.first_component != comp || b.last_component <= b.first_component ||
                b.last_component > components.size() || components[b.first_component].begin != b.begin ||
                components[b.last_component - 1].end != b.end)
                throw Error(ErrorCode::PartitionMismatch, "block/component alignment");
            comp = b.last_component;
        }
        next = b.end;
    }
    if (next != n) throw Error(ErrorCode::PartitionMismatch, "blocks do not cover");
}

BlockPartition partition_from_sizes(const std::vector<std::size_t>& sizes) {
    BlockPartition p;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
        const std::size_t s = sizes[b];
        if (s == 0) throw Error(ErrorCode::PartitionMismatch, "empty block");
        p.components.push_back({pos, pos + s, {}});
        p.blocks.push_back({pos, pos + s, s == 1 ? BlockTag::Scalar : BlockTag::StrongSH, {}, b, b + 1});
        pos += s;
    }
    p.permutation.resize(pos);
    std::iota(p.permutation.begin(), p.permutation.end(), std::size_t{0});
    return p;
}

BlockPartition singleton_partition(std::size_t n) {
    return partition_from_sizes(std::vector<std::size_t>(n, 1));
}

}  // namespace shc
