#include "shc/strong_sh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "engine.hpp"
#include "shc/diag_correct.hpp"
#include "shc/error.hpp"
#include "shc/majorization.hpp"

namespace shc {

namespace {

double window_tol(const DenseHermitian& a) { return 1e-12 * (1.0 + a.frobenius_norm()); }

void check_trace(const DenseHermitian& a, std::span<const double> lambda_tilde) {
    if (lambda_tilde.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "lambda_tilde length differs from matrix");
    const auto d = a.diagonal_entries();
    const double s = std::accumulate(lambda_tilde.begin(), lambda_tilde.end(), 0.0);
    if (std::abs(s - a.trace()) > default_tau_trace(d))
        throw Error(ErrorCode::TraceMismatch, "sum of lambda_tilde differs from trace(A)");
}

DenseHermitian block_diagonal(const DenseHermitian& a1, const DenseHermitian& a2) {
    const std::size_t n1 = a1.size();
    const auto kind = a1.is_complex() || a2.is_complex() ? MatrixKind::ComplexHermitian : MatrixKind::RealSymmetric;
    DenseHermitian out(n1 + a2.size(), kind);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = i; j < n1; ++j) out.set(i, j, a1(i, j));
    for (std::size_t i = 0; i < a2.size(); ++i)
        for (std::size_t j = i; j < a2.size(); ++j) out.set(n1 + i, n1 + j, a2(i, j));
    return out;
}

BlockPartition single_block(const DenseHermitian& a, const char* what) {
    auto p = block_decompose(a);
    if (p.blocks.size() != 1)
        throw Error(ErrorCode::NotStronglyCorrectable, std::string(what) + " splits into several blocks");
    return p;
}

// blkdiag(A1, A2) as one block whose merge tree joins the two sides.
CorrectionCertificate merge_pair(const DenseHermitian& a1, const BlockPartition& p1, const DenseHermitian& a2,
                                 const BlockPartition& p2, std::span<const double> lt1,
                                 std::span<const double> lt2) {
    if (lt1.size() != a1.size() || lt2.size() != a2.size())
        throw Error(ErrorCode::DimensionMismatch, "block spectrum lengths");
    const DenseHermitian a = block_diagonal(a1, a2);
    std::vector<double> all(lt1.begin(), lt1.end());
    all.insert(all.end(), lt2.begin(), lt2.end());
    check_trace(a, all);

    const std::size_t n1 = a1.size();
    const std::size_t c1 = p1.components.size();
    BlockPartition part;
    part.permutation = p1.permutation;
    for (auto k : p2.permutation) part.permutation.push_back(n1 + k);
    part.components = p1.components;
    for (auto c : p2.components) {
        c.begin += n1;
        c.end += n1;
        part.components.push_back(c);
    }
    Block b;
    b.begin = 0;
    b.end = a.size();
    b.tag = BlockTag::StrongSH;
    b.window = p1.blocks[0].window.hull(p2.blocks[0].window);
    b.first_component = 0;
    b.last_component = part.components.size();
    part.blocks = {b};

    const auto tree = detail::join(detail::left_deep_tree(0, c1), detail::left_deep_tree(c1, part.components.size()));
    std::vector<detail::SpectrumGroup> groups{{0, n1, std::vector<double>(lt1.begin(), lt1.end())}, {n1, a.size(), std::vector<double>(lt2.begin(), lt2.end())}};
    return detail::correct_in_partition(a, part, {tree}, groups, default_tau_struct(a));
}

}  // namespace

double default_tau_struct(const DenseHermitian& a) { return 1e-12 * a.frobenius_norm(); }

std::vector<std::vector<std::size_t>> connected_components(const DenseHermitian& a, double tau_struct) {
    if (tau_struct < 0.0) throw Error(ErrorCode::InvalidArgument, "tau_struct must be non-negative");
    const std::size_t n = a.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> bfs;
        bfs.push(s);
        seen[s] = true;
        while (!bfs.empty()) {
            const std::size_t u = bfs.front();
            bfs.pop();
            comp.push_back(u);
            for (std::size_t v = 0; v < n; ++v) {
                if (seen[v] || v == u || std::abs(a(u, v)) <= tau_struct) continue;
                seen[v] = true;
                bfs.push(v);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<std::vector<std::size_t>> connected_components(const DenseHermitian& a) {
    return connected_components(a, default_tau_struct(a));
}

SpectrumWindow spectrum_window(const DenseHermitian& a) {
    const auto eig = eig_sym(a);
    return {eig.eigenvalues.front(), eig.eigenvalues.back()};
}

BlockPartition block_decompose(const DenseHermitian& a, double tau_struct) {
    struct Comp {
        std::vector<std::size_t> members;
        SpectrumWindow window;
    };
    std::vector<Comp> comps;
    for (auto& m : connected_components(a, tau_struct)) {
        const auto w = m.size() == 1 ? SpectrumWindow{a.diag(m[0]), a.diag(m[0])} : spectrum_window(a.principal(m));
        comps.push_back({std::move(m), w});
    }
    std::stable_sort(comps.begin(), comps.end(), [](const Comp& x, const Comp& y) {
        return x.window.lo < y.window.lo || (x.window.lo == y.window.lo && x.window.hi < y.window.hi);
    });

    const double tol = window_tol(a);
    BlockPartition part;
    for (const auto& c : comps) {
        const std::size_t begin = part.permutation.size();
        part.permutation.insert(part.permutation.end(), c.members.begin(), c.members.end());
        const std::size_t end = part.permutation.size();
        part.components.push_back({begin, end, c.window});

        const bool scalar = c.members.size() == 1;
        if (!part.blocks.empty()) {
            Block& cur = part.blocks.back();
            const bool joins = scalar ? cur.window.interior_contains(c.window.lo, tol) : cur.window.overlap(c.window) > tol;
            if (joins) {
                cur.end = end;
                cur.tag = BlockTag::StrongSH;
                cur.window = cur.window.hull(c.window);
                cur.last_component = part.components.size();
                continue;
            }
        }
        Block b;
        b.begin = begin;
        b.end = end;
        b.tag = scalar ? BlockTag::Scalar : BlockTag::StrongSH;
        b.window = c.window;
        b.first_component = part.components.size() - 1;
        b.last_component = part.components.size();
        part.blocks.push_back(b);
    }
    return part;
}

BlockPartition block_decompose(const DenseHermitian& a) { return block_decompose(a, default_tau_struct(a)); }

CorrectionCertificate correct_irreducible(const DenseHermitian& a, std::span<const double> lambda_tilde) {
    const double tau = default_tau_struct(a);
    if (connected_components(a, tau).size() != 1) throw Error(ErrorCode::NotIrreducible, "matrix is reducible");
    check_trace(a, lambda_tilde);
    BlockPartition part = partition_from_sizes({a.size()});
    part.components[0].window = spectrum_window(a);
    part.blocks[0].window = part.components[0].window;
    part.blocks[0].tag = a.size() == 1 ? BlockTag::Scalar : BlockTag::StrongSH;
    const std::vector<detail::SpectrumGroup> groups{
        {0, a.size(), std::vector<double>(lambda_tilde.begin(), lambda_tilde.end())}};
    return detail::correct_in_partition(a, part, {detail::left_deep_tree(0, 1)}, groups, tau);
}

CorrectionCertificate merge_blocks(const DenseHermitian& a1, const DenseHermitian& a2,
                                   std::span<const double> lambda_tilde1, std::span<const double> lambda_tilde2) {
    const auto p1 = single_block(a1, "first block");
    const auto p2 = single_block(a2, "second block");
    const double tol = std::max(window_tol(a1), window_tol(a2));
    if (p1.blocks[0].window.overlap(p2.blocks[0].window) <= tol)
        throw Error(ErrorCode::WindowsDisjoint, "spectrum windows do not overlap with positive measure");
    return merge_pair(a1, p1, a2, p2, lambda_tilde1, lambda_tilde2);
}

CorrectionCertificate absorb_scalar(const DenseHermitian& a1, double d2, std::span<const double> lambda_tilde1,
                                    double lambda_tilde2) {
    const auto p1 = single_block(a1, "block");
    if (!p1.blocks[0].window.interior_contains(d2, window_tol(a1)))
        throw Error(ErrorCode::ScalarOutsideWindow, "scalar is not strictly inside the spectrum window");
    const std::vector<double> v{d2};
    const auto a2 = DenseHermitian::diagonal(v, a1.kind());
    const std::vector<double> lt2{lambda_tilde2};
    return merge_pair(a1, p1, a2, single_block(a2, "scalar"), lambda_tilde1, lt2);
}

std::vector<double> gen_violation_perturbation(std::span<const double> lambda, std::span<const double> d,
                                               std::size_t i, double eps) {
    const std::size_t n = lambda.size();
    if (d.size() != n) throw Error(ErrorCode::DimensionMismatch, "lambda and d must have equal length");
    if (i < 1 || i >= n) throw Error(ErrorCode::IndexOutOfRange, "partial-sum index must lie in 1..n-1", i);
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    auto l = sorted_ascending(lambda);
    const auto report = check_majorization(l, d);
    if (std::abs(report.slacks[i - 1]) > report.tau_maj)
        throw Error(ErrorCode::NoEqualityAtI, "majorization inequality is not an equality at i", i);

    double scale = 0.0;
    for (double x : l) scale = std::max(scale, std::abs(x));
    const double tol = 1e-12 * (1.0 + scale);
    auto same = [&](double x, double y) { return std::abs(x - y) <= tol; };
    if (same(l.front(), l.back())) throw Error(ErrorCode::ScalarSpectrum, "spectrum is constant");

    // 0-based: l[i-1] is the i-th eigenvalue; k = number of entries below the top group.
    std::size_t k = n;
    while (k > 0 && same(l[k - 1], l[n - 1])) --k;
    if (!same(l[i - 1], l[n - 1])) {
        std::size_t ell = i - 1;
        while (ell > 0 && same(l[ell - 1], l[i - 1])) --ell;
        std::size_t r = i;
        while (r < n && same(l[r], l[i - 1])) ++r;
        const double down = static_cast<double>(r - ell) / static_cast<double>(n - k) * eps;
        for (std::size_t p = ell; p < r; ++p) l[p] += eps;
        for (std::size_t p = k; p < n; ++p) l[p] -= down;
    } else {
        std::size_t r = 1;
        while (r < n && same(l[r], l[0])) ++r;
        const double up = static_cast<double>(n - k) / static_cast<double>(r) * eps;
        for (std::size_t p = 0; p < r; ++p) l[p] += up;
        for (std::size_t p = k; p < n; ++p) l[p] -= eps;
    }
    return l;
}

CorrectionCertificate strong_sh_correct(const DenseHermitian& a, std::span<const double> lambda_tilde) {
    check_trace(a, lambda_tilde);
    const auto d = a.diagonal_entries();
    const auto lambda = eig_sym(a).eigenvalues;
    const auto strictness = classify_strictness(check_majorization(lambda, d), lambda, d);
    if (strictness.kind == StrictnessClass::ScalarMatrix) return correct_diagonal(d, lambda_tilde);
    if (strictness.kind == StrictnessClass::NonStrict)
        throw Error(ErrorCode::NotStronglyCorrectable,
                    "majorization holds with equality at partial sum " + std::to_string(strictness.k), strictness.k);

    const auto part = single_block(a, "matrix");
    const std::size_t nc = part.components.size();
    const std::vector<detail::SpectrumGroup> groups{
        {0, a.size(), std::vector<double>(lambda_tilde.begin(), lambda_tilde.end())}};
    return detail::correct_in_partition(a, part, {detail::left_deep_tree(0, nc)}, groups, default_tau_struct(a));
}

}  // namespace shc
