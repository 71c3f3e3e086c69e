#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "shc/error.hpp"
#include "shc/givens.hpp"
#include "shc/majorization.hpp"

namespace shc::detail {

MergeTree left_deep_tree(std::size_t first, std::size_t last) {
    if (first >= last) throw Error(ErrorCode::InvalidArgument, "empty merge tree");
    MergeTree t;
    t.nodes.push_back({true, first, 0, 0});
    t.root = 0;
    for (std::size_t c = first + 1; c < last; ++c) {
        t.nodes.push_back({true, c, 0, 0});
        t.nodes.push_back({false, 0, t.root, t.nodes.size() - 1});
        t.root = t.nodes.size() - 1;
    }
    return t;
}

MergeTree join(const MergeTree& left, const MergeTree& right) {
    MergeTree t = left;
    const std::size_t offset = t.nodes.size();
    for (auto node : right.nodes) {
        if (!node.leaf) {
            node.left += offset;
            node.right += offset;
        }
        t.nodes.push_back(node);
    }
    t.nodes.push_back({false, 0, left.root, right.root + offset});
    t.root = t.nodes.size() - 1;
    return t;
}

std::vector<ComponentBasis> component_bases(const DenseHermitian& a, const std::vector<ComponentRange>& components) {
    std::vector<ComponentBasis> out;
    out.reserve(components.size());
    for (const auto& c : components) {
        std::vector<std::size_t> idx(c.size());
        std::iota(idx.begin(), idx.end(), c.begin);
        auto eig = eig_sym(a.principal(idx));
        out.push_back({std::move(eig.eigenvalues), std::move(eig.basis)});
    }
    return out;
}

void assign_spectrum(std::vector<double>& start, const std::vector<ComponentRange>& components,
                     const std::vector<ComponentBasis>& bases, std::size_t begin, std::size_t end,
                     std::span<const double> lambda_tilde) {
    struct Slot {
        double value;
        std::size_t position;
    };
    std::vector<Slot> slots;
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& r = components[c];
        if (r.begin < begin || r.end > end) continue;
        for (std::size_t k = 0; k < r.size(); ++k) slots.push_back({bases[c].eigenvalues[k], r.begin + k});
    }
    if (slots.size() != end - begin || lambda_tilde.size() != slots.size())
        throw Error(ErrorCode::PartitionMismatch, "spectrum group does not align with components");
    std::sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) {
        return x.value < y.value || (x.value == y.value && x.position < y.position);
    });
    const auto sorted = sorted_ascending(lambda_tilde);
    for (std::size_t k = 0; k < slots.size(); ++k) start[slots[k].position] = sorted[k];
}

namespace {

class Engine {
public:
    Engine(const DenseHermitian& a, const std::vector<ComponentRange>& components,
           const std::vector<ComponentBasis>& bases, std::span<const double> start, double tau_struct)
        : a_(a), components_(components), bases_(bases), tau_struct_(tau_struct),
          tau_skip_(1e-12 * (1.0 + a.frobenius_norm())), m_(DenseHermitian::diagonal(start, a.kind())) {}

    void balance_blocks(const std::vector<EngineBlock>& blocks) {
        const std::size_t nb = blocks.size();
        std::vector<double> h(nb);
        auto excess = [&](std::size_t b) { return diag_sum(blocks[b].begin, blocks[b].end) - target_sum(blocks[b].begin, blocks[b].end); };
        for (std::size_t b = 0; b < nb; ++b) h[b] = excess(b);

        std::set<std::size_t> queue;
        std::size_t k = 0;
        while (true) {
            for (; k < nb && h[k] <= tau_skip_; ++k)
                if (h[k] < -tau_skip_) queue.insert(k);
            if (k == nb) break;
            const std::size_t j = k;
            while (h[j] > tau_skip_) {
                if (queue.empty())
                    throw Error(ErrorCode::MajorizationViolated, "block surplus without a pending deficit", j + 1);
                const std::size_t i = *queue.begin();
                queue.erase(queue.begin());
                const std::size_t p = argmin(blocks[i].begin, blocks[i].end);
                const std::size_t q = argmax(blocks[j].begin, blocks[j].end);
                rotate(p, q, m_.diag(p) - h[i]);
                h[i] = excess(i);
                h[j] = excess(j);
            }
            if (h[j] < -tau_skip_) queue.insert(j);
            k = j + 1;
        }
    }

    void compensate(const MergeTree& tree) { compensate(tree, tree.root); }

    void change_basis() {
        for (std::size_t c = 0; c < components_.size(); ++c) {
            const auto& r = components_[c];
            if (r.size() < 2) continue;
            BasisChange b;
            b.indices.resize(r.size());
            std::iota(b.indices.begin(), b.indices.end(), r.begin);
            b.unitary = bases_[c].basis;
            apply_block_unitary(m_, b.indices, b.unitary);
            chain_.emplace_back(std::move(b));
        }
    }

    void correct_trees() {
        for (const auto& r : components_)
            if (r.size() > 1) correct_tree(r);
    }

    EngineResult take() { return {std::move(m_), std::move(chain_), std::move(steps_)}; }

private:
    double diag_sum(std::size_t begin, std::size_t end) const {
        double s = 0.0;
        for (std::size_t p = begin; p < end; ++p) s += m_.diag(p);
        return s;
    }
    double target_sum(std::size_t begin, std::size_t end) const {
        double s = 0.0;
        for (std::size_t p = begin; p < end; ++p) s += a_.diag(p);
        return s;
    }
    std::size_t argmin(std::size_t begin, std::size_t end) const {
        std::size_t best = begin;
        for (std::size_t p = begin + 1; p < end; ++p)
            if (m_.diag(p) < m_.diag(best)) best = p;
        return best;
    }
    std::size_t argmax(std::size_t begin, std::size_t end) const {
        std::size_t best = begin;
        for (std::size_t p = begin + 1; p < end; ++p)
            if (m_.diag(p) > m_.diag(best)) best = p;
        return best;
    }

    // Sets the (p, p) entry to d1 with a rotation on (p, q).
    void rotate(std::size_t p, std::size_t q, double d1) {
        const TwoByTwoProblem prob{m_.diag(p), m_.diag(q), m_(p, q), d1, a_.diag(q)};
        GivensParams g = m_.is_complex() ? solve_correction_angle_hermitian(prob, RootChoice::Small, PhaseForm::NearIdentity) : solve_correction_angle(prob);
        g.i = p;
        g.j = q;
        apply_givens(m_, g);
        chain_.emplace_back(g);
        steps_.push_back({p, q, g, m_.diag(p) - d1, m_.diag(q) - a_.diag(q)});
    }

    void positions(const MergeTree& tree, std::size_t node, std::vector<std::size_t>& out) const {
        const auto& nd = tree.nodes[node];
        if (nd.leaf) {
            for (std::size_t p = components_[nd.component].begin; p < components_[nd.component].end; ++p)
                out.push_back(p);
            return;
        }
        positions(tree, nd.left, out);
        positions(tree, nd.right, out);
    }

    void compensate(const MergeTree& tree, std::size_t node) {
        const auto& nd = tree.nodes[node];
        if (nd.leaf) return;
        std::vector<std::size_t> g1;
        std::vector<std::size_t> g2;
        positions(tree, nd.left, g1);
        positions(tree, nd.right, g2);
        double h = 0.0;
        for (auto p : g1) h += m_.diag(p) - a_.diag(p);
        if (std::abs(h) > tau_skip_) {
            auto lo = [&](const std::vector<std::size_t>& g) {
                return *std::min_element(g.begin(), g.end(), [&](auto x, auto y) { return m_.diag(x) < m_.diag(y); });
            };
            auto hi = [&](const std::vector<std::size_t>& g) {
                return *std::max_element(g.begin(), g.end(), [&](auto x, auto y) { return m_.diag(x) < m_.diag(y); });
            };
            const std::size_t p = h > 0.0 ? hi(g1) : lo(g1);
            const std::size_t q = h > 0.0 ? lo(g2) : hi(g2);
            rotate(p, q, m_.diag(p) - h);
        }
        compensate(tree, nd.left);
        compensate(tree, nd.right);
    }

    void correct_tree(const ComponentRange& r) {
        const std::size_t size = r.size();
        std::vector<std::size_t> parent(size, size);
        std::vector<std::size_t> depth(size, 0);
        std::vector<bool> seen(size, false);
        std::queue<std::size_t> bfs;
        bfs.push(0);
        seen[0] = true;
        while (!bfs.empty()) {
            const std::size_t u = bfs.front();
            bfs.pop();
            for (std::size_t v = 0; v < size; ++v) {
                if (seen[v] || std::abs(a_(r.begin + u, r.begin + v)) <= tau_struct_) continue;
                seen[v] = true;
                parent[v] = u;
                depth[v] = depth[u] + 1;
                bfs.push(v);
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw Error(ErrorCode::NotIrreducible, "component is not connected");

        std::vector<std::size_t> order(size - 1);
        std::iota(order.begin(), order.end(), std::size_t{1});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return depth[x] > depth[y] || (depth[x] == depth[y] && x < y); });
        for (auto leaf : order) {
            const std::size_t p = r.begin + leaf;
            const std::size_t q = r.begin + parent[leaf];
            if (std::abs(m_.diag(p) - a_.diag(p)) <= tau_skip_) continue;
            if (std::abs(m_(p, q)) <= tau_struct_)
                throw Error(ErrorCode::EdgeVanished, "spanning-tree edge fell to a structural zero", p);
            try {
                rotate(p, q, a_.diag(p));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Infeasible) throw;
                throw Error(ErrorCode::EdgeVanished, "spanning-tree edge too weak for the perturbation", p);
            }
        }
    }

    const DenseHermitian& a_;
    const std::vector<ComponentRange>& components_;
    const std::vector<ComponentBasis>& bases_;
    double tau_struct_;
    double tau_skip_;
    DenseHermitian m_;
    std::vector<Transform> chain_;
    std::vector<CorrectionStep> steps_;
};

}  // namespace

EngineResult run_engine(const DenseHermitian& a, const std::vector<ComponentRange>& components,
                        const std::vector<ComponentBasis>& bases, const std::vector<EngineBlock>& blocks,
                        std::span<const double> start, double tau_struct) {
    if (start.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "start spectrum length");
    Engine e(a, components, bases, start, tau_struct);
    if (blocks.size() > 1) e.balance_blocks(blocks);
    for (const auto& b : blocks) e.compensate(b.tree);
    e.change_basis();
    e.correct_trees();
    return e.take();
}

CorrectionCertificate finish_certificate(EngineResult&& r, std::span<const std::size_t> permutation,
                                         std::span<const double> start, const DenseHermitian& original,
                                         std::span<const double> lambda_tilde) {
    const std::size_t n = permutation.size();
    std::vector<std::size_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[permutation[p]] = p;

    CorrectionCertificate cert;
    cert.kind = original.kind();
    cert.start_diagonal.resize(n);
    for (std::size_t p = 0; p < n; ++p) cert.start_diagonal[permutation[p]] = start[p];
    cert.chain.reserve(r.chain.size());
    for (const auto& t : r.chain) cert.chain.push_back(remap(t, permutation));
    for (auto s : r.steps) {
        s.rotation = std::get<GivensParams>(remap(s.rotation, permutation));
        s.i = permutation[s.i];
        s.j = permutation[s.j];
        cert.steps.push_back(s);
    }
    cert.result = r.m.permuted(position);
    fill_residuals(cert, original, original.diagonal_entries(), lambda_tilde);
    return cert;
}

CorrectionCertificate correct_in_partition(const DenseHermitian& a, const BlockPartition& partition,
                                           const std::vector<MergeTree>& trees,
                                           const std::vector<SpectrumGroup>& groups, double tau_struct) {
    partition.validate();
    if (partition.size() != a.size()) throw Error(ErrorCode::PartitionMismatch, "partition size differs from matrix");
    if (trees.size() != partition.blocks.size()) throw Error(ErrorCode::PartitionMismatch, "one merge tree per block");

    const DenseHermitian ap = a.permuted(partition.permutation);
    const auto bases = component_bases(ap, partition.components);
    std::vector<double> start(a.size());
    std::vector<double> all;
    for (const auto& g : groups) {
        assign_spectrum(start, partition.components, bases, g.begin, g.end, g.lambda_tilde);
        all.insert(all.end(), g.lambda_tilde.begin(), g.lambda_tilde.end());
    }
    if (all.size() != a.size()) throw Error(ErrorCode::PartitionMismatch, "spectrum groups do not cover the matrix");

    std::vector<EngineBlock> blocks;
    for (std::size_t b = 0; b < trees.size(); ++b)
        blocks.push_back({partition.blocks[b].begin, partition.blocks[b].end, trees[b]});
    auto r = run_engine(ap, partition.components, bases, blocks, start, tau_struct);
    auto cert = finish_certificate(std::move(r), partition.permutation, start, a, all);
    cert.partition = partition;
    return cert;
}

}  // namespace shc::detail
