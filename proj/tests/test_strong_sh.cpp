#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "shc/error.hpp"
#include "shc/harness.hpp"
#include "shc/majorization.hpp"
#include "shc/strong_sh.hpp"

using namespace shc;

namespace {

DenseHermitian sym(std::size_t n, std::initializer_list<std::tuple<std::size_t, std::size_t, double>> entries) {
    DenseHermitian a(n, MatrixKind::RealSymmetric);
    for (auto [i, j, v] : entries) a.set(i, j, v);
    return a;
}

DenseHermitian swap2(double b = 1.0) { return sym(2, {{0, 1, b}}); }

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

const GivensParams& first_rotation(const CorrectionCertificate& c) {
    for (const auto& t : c.chain)
        if (const auto* g = std::get_if<GivensParams>(&t)) return *g;
    throw std::logic_error("no rotation");
}

void expect_valid(const DenseHermitian& a, std::span<const double> lt, const CorrectionCertificate& c) {
    const auto r = validate_certificate(a, lt, c);
    EXPECT_TRUE(r.ok()) << r.diag_residual << " " << r.spectrum_residual << " " << r.chain_residual << " "
                        << r.orthogonality_defect;
    EXPECT_LT(oracle::max_diff(oracle::eigenvalues(c.result), sorted_ascending(lt)), 1e-8 * (1 + a.max_abs()));
}

}  // namespace

TEST(Components, Examples) {
    const std::vector<double> d{1, 2, 3};
    EXPECT_EQ(connected_components(DenseHermitian::diagonal(d)).size(), 3u);
    EXPECT_EQ(connected_components(swap2()), (std::vector<std::vector<std::size_t>>{{0, 1}}));
    const auto a = sym(3, {{0, 1, 1.0}, {2, 2, 5.0}});
    EXPECT_EQ(connected_components(a), (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
}

TEST(Components, Threshold) {
    const auto a = sym(3, {{0, 2, 1e-3}, {1, 1, 1.0}});
    EXPECT_EQ(connected_components(a, 0.0).size(), 2u);
    EXPECT_EQ(connected_components(a, 1e-2).size(), 3u);
}

TEST(Window, Examples) {
    const std::vector<double> five{5};
    const auto w = spectrum_window(DenseHermitian::diagonal(five));
    EXPECT_EQ(w.lo, 5.0);
    EXPECT_EQ(w.measure(), 0.0);
    const auto s = spectrum_window(swap2());
    EXPECT_NEAR(s.lo, -1.0, 1e-14);
    EXPECT_NEAR(s.measure(), 2.0, 1e-14);
    const auto t = spectrum_window(sym(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 2.0}}));
    EXPECT_NEAR(t.lo, 1.0, 1e-14);
    EXPECT_NEAR(t.hi, 3.0, 1e-14);
}

TEST(Irreducible, Unperturbed) {
    const auto a = sym(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const auto lambda = eig_sym(a).eigenvalues;
    const auto c = correct_irreducible(a, lambda);
    EXPECT_LT(fro_dist(c.result, a), 1e-10);
    EXPECT_EQ(c.rotation_count(), 0u);
}

TEST(Irreducible, TwoByTwo) {
    const double eps = 1e-3;
    const std::vector<double> lt{-1 - eps, 1 + eps};
    const auto c = correct_irreducible(swap2(), lt);
    EXPECT_LT(fro_dist(c.result, swap2(1 + eps)), 1e-9);
    expect_valid(swap2(), lt, c);
}

TEST(Irreducible, Tridiagonal) {
    const double eps = 1e-4;
    const auto a = sym(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    auto lt = eig_sym(a).eigenvalues;
    lt[0] += eps;
    lt[1] -= 2 * eps;
    lt[2] += eps;
    const auto c = correct_irreducible(a, lt);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(c.result.diag(k), 0.0, 1e-10);
    EXPECT_LE(fro_dist(c.result, a), 10 * eps);
    expect_valid(a, lt, c);
}

TEST(Irreducible, Errors) {
    const std::vector<double> d{1, 2}, lt{1, 2};
    EXPECT_EQ(code_of([&] { correct_irreducible(DenseHermitian::diagonal(d), lt); }), ErrorCode::NotIrreducible);
    const std::vector<double> off{-1, 1.5};
    EXPECT_EQ(code_of([&] { correct_irreducible(swap2(), off); }), ErrorCode::TraceMismatch);
    // spectrum collapsed onto the mean: the basis keeps no usable edge to restore diag (0, 1)
    const auto a = sym(2, {{0, 1, 1.0}, {1, 1, 1.0}});
    const std::vector<double> flat{0.5 - 1e-13, 0.5 + 1e-13};
    EXPECT_EQ(code_of([&] { correct_irreducible(a, flat); }), ErrorCode::EdgeVanished);
}

TEST(Merge, NoOffset) {
    const std::vector<double> l1{-1.001, 1.001}, l2{-0.5, 0.5};
    const auto c = merge_blocks(swap2(), swap2(0.5), l1, l2);
    // only the per-block corrections, no compensation between the blocks
    for (const auto& t : c.chain)
        if (const auto* g = std::get_if<GivensParams>(&t)) EXPECT_EQ(g->i / 2, g->j / 2);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(c.result.diag(k), 0.0, 1e-10);
}

TEST(Merge, Compensation) {
    const double h = 1e-4;
    const std::vector<double> l1{-1, 1 + h}, l2{-0.5 - h, 0.5};
    const auto c = merge_blocks(swap2(), swap2(0.5), l1, l2);
    const auto& g = first_rotation(c);
    EXPECT_NEAR(std::abs(std::tan(g.theta)), std::sqrt(h / 1.5), 1e-3 * std::sqrt(h / 1.5));
    EXPECT_NEAR(std::max(c.start_diagonal[g.i], c.start_diagonal[g.j]), 1.0, 1e-3);
    EXPECT_NEAR(std::min(c.start_diagonal[g.i], c.start_diagonal[g.j]), -0.5, 1e-3);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(c.result.diag(k), 0.0, 1e-10);
    std::vector<double> all{-1, 1 + h, -0.5 - h, 0.5};
    auto a = DenseHermitian(4, MatrixKind::RealSymmetric);
    a.set(0, 1, 1.0);
    a.set(2, 3, 0.5);
    expect_valid(a, all, c);
}

TEST(Merge, MirroredCompensation) {
    const double h = -1e-4;
    const std::vector<double> l1{-1, 1 + h}, l2{-0.5 - h, 0.5};
    const auto c = merge_blocks(swap2(), swap2(0.5), l1, l2);
    const auto& g = first_rotation(c);
    EXPECT_NEAR(std::min(c.start_diagonal[g.i], c.start_diagonal[g.j]), -1.0, 1e-3);
    EXPECT_NEAR(std::max(c.start_diagonal[g.i], c.start_diagonal[g.j]), 0.5, 1e-3);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(c.result.diag(k), 0.0, 1e-10);
}

TEST(Merge, Disjoint) {
    const auto far = sym(2, {{0, 0, 5.0}, {0, 1, 1.0}, {1, 1, 5.0}});
    const std::vector<double> l1{-1, 1}, l2{4, 6};
    EXPECT_EQ(code_of([&] { merge_blocks(swap2(), far, l1, l2); }), ErrorCode::WindowsDisjoint);
}

TEST(Absorb, Untouched) {
    const std::vector<double> l1{-1, 1};
    const auto c = absorb_scalar(swap2(), 0.0, l1, 0.0);
    EXPECT_EQ(c.rotation_count(), 0u);
    EXPECT_EQ(c.result(2, 2), Complex(0.0));
}

TEST(Absorb, Compensation) {
    const double h = 1e-4;
    const std::vector<double> l1{-1, 1 + h};
    const auto c = absorb_scalar(swap2(), 0.5, l1, 0.5 - h);
    const auto& g = first_rotation(c);
    EXPECT_NEAR(std::max(c.start_diagonal[g.i], c.start_diagonal[g.j]), 1.0, 1e-3);
    EXPECT_NEAR(std::min(c.start_diagonal[g.i], c.start_diagonal[g.j]), 0.5, 1e-3);
    EXPECT_NEAR(std::abs(std::tan(g.theta)), std::sqrt(h / 0.5), 1e-3 * std::sqrt(h / 0.5));
    EXPECT_NEAR(c.result.diag(0), 0.0, 1e-10);
    EXPECT_NEAR(c.result.diag(1), 0.0, 1e-10);
    EXPECT_NEAR(c.result.diag(2), 0.5, 1e-10);
}

TEST(Absorb, Boundary) {
    const std::vector<double> l1{-1, 1};
    EXPECT_EQ(code_of([&] { absorb_scalar(swap2(), 1.0, l1, 1.0); }), ErrorCode::ScalarOutsideWindow);
}

TEST(Decompose, Diagonal) {
    const std::vector<double> d{3, 1, 2};
    const auto p = block_decompose(DenseHermitian::diagonal(d));
    ASSERT_EQ(p.blocks.size(), 3u);
    EXPECT_EQ(p.permutation, (std::vector<std::size_t>{1, 2, 0}));
    for (const auto& b : p.blocks) EXPECT_EQ(b.tag, BlockTag::Scalar);
}

TEST(Decompose, ScalarInsideWindow) {
    const auto a = sym(4, {{0, 1, 1.0}, {2, 2, 0.5}, {3, 3, 5.0}});
    const auto p = block_decompose(a);
    ASSERT_EQ(p.blocks.size(), 2u);
    EXPECT_EQ(p.blocks[0].tag, BlockTag::StrongSH);
    EXPECT_EQ(p.blocks[0].size(), 3u);
    EXPECT_EQ(p.blocks[1].tag, BlockTag::Scalar);
    EXPECT_EQ(p.permutation[3], 3u);
}

TEST(Decompose, DisjointWindows) {
    const auto a = sym(4, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 2.0}, {2, 3, 0.5}});
    const auto p = block_decompose(a);
    ASSERT_EQ(p.blocks.size(), 2u);
    EXPECT_EQ(p.permutation, (std::vector<std::size_t>{2, 3, 0, 1}));
    EXPECT_NEAR(p.blocks[0].window.hi, 0.5, 1e-14);
    EXPECT_NEAR(p.blocks[1].window.lo, 1.0, 1e-14);
    EXPECT_EQ(p.blocks[0].tag, BlockTag::StrongSH);
    EXPECT_EQ(p.blocks[1].tag, BlockTag::StrongSH);
}

TEST(Violation, Examples) {
    const double eps = 1e-3;
    const std::vector<double> l{1, 2};
    const auto v = gen_violation_perturbation(l, l, 1, eps);
    EXPECT_NEAR(v[0], 1.001, 1e-15);
    EXPECT_NEAR(v[1], 1.999, 1e-15);
    EXPECT_EQ(check_majorization(v, l).first_violation(), 1u);

    const std::vector<double> m{0, 0, 3};
    const auto w = gen_violation_perturbation(m, m, 2, eps);
    EXPECT_NEAR(w[0], eps, 1e-15);
    EXPECT_NEAR(w[1], eps, 1e-15);
    EXPECT_NEAR(w[2], 3 - 2 * eps, 1e-15);
    const auto r = check_majorization(w, m);
    EXPECT_LT(r.slacks[0], 0.0);
    EXPECT_NEAR(r.slacks[1], -2 * eps, 1e-15);
}

TEST(Violation, Errors) {
    const std::vector<double> one{1, 1};
    EXPECT_EQ(code_of([&] { gen_violation_perturbation(one, one, 1, 1e-3); }), ErrorCode::ScalarSpectrum);
    const std::vector<double> l{1, 2, 3}, d{2, 2, 2};
    EXPECT_EQ(code_of([&] { gen_violation_perturbation(l, d, 1, 1e-3); }), ErrorCode::NoEqualityAtI);
    EXPECT_EQ(code_of([&] { gen_violation_perturbation(l, l, 3, 1e-3); }), ErrorCode::IndexOutOfRange);
}

TEST(Violation, RandomEqualities) {
    Rng rng(41);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + rng.below(6);
        std::vector<double> l(n);
        for (auto& x : l) x = static_cast<double>(rng.below(4));
        std::sort(l.begin(), l.end());
        if (l.front() == l.back()) continue;
        const std::size_t i = 1 + rng.below(n - 1);
        const double eps = 1e-4;
        const auto v = gen_violation_perturbation(l, l, i, eps);
        EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
        double drift = 0, dist = 0;
        for (std::size_t k = 0; k < n; ++k) {
            drift += v[k] - l[k];
            dist += (v[k] - l[k]) * (v[k] - l[k]);
        }
        EXPECT_NEAR(drift, 0.0, 1e-12);
        EXPECT_LE(std::sqrt(dist), 10 * static_cast<double>(n) * eps);
        const auto r = check_majorization(v, l);
        EXPECT_LT(r.slacks[i - 1], -0.5 * eps);
    }
}

TEST(StrongSH, Scalar) {
    const std::vector<double> c{2.5};
    const auto cert = strong_sh_correct(DenseHermitian::diagonal(c), c);
    EXPECT_EQ(cert.rotation_count(), 0u);
    EXPECT_EQ(cert.result, DenseHermitian::diagonal(c));
}

TEST(StrongSH, MergedBlock) {
    const double h = 1e-4;
    const auto a = sym(3, {{0, 1, 1.0}, {2, 2, 0.5}});
    const std::vector<double> lt{-1, 1 + h, 0.5 - h};
    const auto c = strong_sh_correct(a, lt);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(c.result.diag(k), a.diag(k), 1e-10);
    expect_valid(a, lt, c);
}

TEST(StrongSH, NonStrict) {
    const std::vector<double> d{1, 2}, lt{1, 2};
    EXPECT_EQ(code_of([&] { strong_sh_correct(DenseHermitian::diagonal(d), lt); }), ErrorCode::NotStronglyCorrectable);
}

TEST(StrongSHProperty, WindowsHaveMeasure) {
    Rng rng(42);
    std::size_t checked = 0;
    for (int t = 0; t < 500; ++t) {
        const auto a = oracle::random_matrix(2 + rng.below(9), rng.coin(), rng, 0.25);
        for (const auto& comp : connected_components(a)) {
            if (comp.size() < 2) continue;
            EXPECT_GT(spectrum_window(a.principal(comp)).measure(), 0.0);
            ++checked;
        }
    }
    EXPECT_GT(checked, 300u);
}

TEST(StrongSHProperty, DecompositionOrderAndReassembly) {
    Rng rng(43);
    for (int t = 0; t < 500; ++t) {
        auto a = oracle::random_matrix(2 + rng.below(9), rng.coin(), rng, 0.2);
        const auto p = block_decompose(a);
        p.validate();
        const double scale = 1 + a.frobenius_norm();
        for (std::size_t k = 0; k + 1 < p.blocks.size(); ++k)
            EXPECT_LE(p.blocks[k].window.hi, p.blocks[k + 1].window.lo + 1e-12 * scale);

        DenseHermitian back(a.size(), a.kind());
        for (const auto& b : p.blocks) {
            std::vector<std::size_t> idx(p.permutation.begin() + b.begin, p.permutation.begin() + b.end);
            const auto sub = a.principal(idx);
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i; j < idx.size(); ++j) {
                    if (idx[i] <= idx[j])
                        back.set(idx[i], idx[j], sub(i, j));
                    else
                        back.set(idx[j], idx[i], sub(j, i));
                }
        }
        EXPECT_EQ(back, a);
    }
}

TEST(StrongSHProperty, SuccessImpliesStrict) {
    Rng rng(44);
    std::size_t successes = 0;
    for (int t = 0; t < 300; ++t) {
        const auto a = oracle::random_matrix(2 + rng.below(5), false, rng, rng.uniform(0.1, 1.0));
        const auto lambda = eig_sym(a).eigenvalues;
        auto lt = lambda;
        const double eps = 1e-6;
        lt.front() -= eps;
        lt.back() += eps;
        try {
            strong_sh_correct(a, lt);
        } catch (const Error&) {
            continue;
        }
        ++successes;
        const auto d = a.diagonal_entries();
        const auto s = classify_strictness(check_majorization(lambda, d), lambda, d);
        EXPECT_NE(s.kind, StrictnessClass::NonStrict);
    }
    EXPECT_GT(successes, 100u);
}

TEST(StrongSHProperty, ChainExactness) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (auto fam : {Family::Irreducible, Family::HermitianIrreducible}) {
            const auto inst = gen_instance(fam, 2 + seed % 6, seed);
            Rng rng(seed);
            const auto lt = inst.perturbed(inst.direction(PerturbationStyle::Generic, rng), 1e-5);
            const auto c = strong_sh_correct(inst.a, lt);
            const auto replay = replay_chain(c.kind, c.start_diagonal, c.chain);
            EXPECT_LT(fro_dist(replay, c.result), 1e-10);
            for (const auto& t : c.chain) {
                if (const auto* b = std::get_if<BasisChange>(&t)) EXPECT_LT(unitarity_defect(b->unitary), 1e-12);
                else EXPECT_LT(unitarity_defect(givens_matrix(std::get<GivensParams>(t), c.result.size())), 1e-12);
            }
            expect_valid(inst.a, lt, c);
        }
    }
}
