#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "shc/diag_correct.hpp"
#include "shc/error.hpp"
#include "shc/harness.hpp"
#include "shc/majorization.hpp"

using namespace shc;

TEST(CorrectDiagonal, NoPerturbation) {
    const std::vector<double> d{1, 2, 3};
    const auto c = correct_diagonal(d, d);
    EXPECT_TRUE(c.steps.empty());
    EXPECT_EQ(c.result, DenseHermitian::diagonal(d));
}

TEST(CorrectDiagonal, SpreadFromScalar) {
    const std::vector<double> d{1, 1, 1}, lt{0, 0, 3};
    const auto c = correct_diagonal(d, lt);
    EXPECT_LT(c.diag_residual, 1e-12);
    EXPECT_LT(c.spectrum_residual, 1e-12);
    EXPECT_LT(oracle::max_diff(oracle::eigenvalues(c.result), lt), 1e-12);
}

TEST(CorrectDiagonal, Violation) {
    const std::vector<double> d{1, 2}, lt{1.001, 1.999};
    try {
        correct_diagonal(d, lt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MajorizationViolated);
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(CorrectionTrace, SingleStep) {
    const double eps = 1e-4;
    const std::vector<double> d{0, 1}, lt{-eps, 1 + eps};
    const auto steps = correction_trace(d, lt);
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].i, 0u);
    EXPECT_EQ(steps[0].j, 1u);
    EXPECT_NEAR(std::abs(std::tan(steps[0].rotation.theta)), std::sqrt(eps / (1 + eps)), 1e-15);
    EXPECT_NEAR(steps[0].h_i, 0.0, 1e-15);
}

TEST(CorrectionTrace, AccumulatedSurplus) {
    const double eps = 1e-3;
    const std::vector<double> d{0, 0, 0}, lt{-2 * eps, eps, eps};
    const auto steps = correction_trace(d, lt);
    ASSERT_EQ(steps.size(), 2u);
    EXPECT_EQ(steps[0].i, 0u);
    EXPECT_EQ(steps[0].j, 1u);
    EXPECT_EQ(steps[1].i, 1u);
    EXPECT_EQ(steps[1].j, 2u);
    const auto c = correct_diagonal(d, lt);
    EXPECT_LT(c.diag_residual, 1e-14);
}

TEST(CorrectDiagonal, CallerOrder) {
    const std::vector<double> d{3, 1, 2}, lt{3.001, 2, 0.999};
    const auto c = correct_diagonal(d, lt);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(c.result.diag(k), d[k], 1e-13);
    EXPECT_LT(c.spectrum_residual, 1e-12);
    EXPECT_LT(c.distance_to_original, 0.2);
}

namespace {

std::vector<double> spread(std::vector<double> d, Rng& rng, double size) {
    for (int k = 0; k < 4; ++k) {
        const std::size_t i = rng.below(d.size()), j = rng.below(d.size());
        if (i == j || d[i] > d[j]) continue;
        const double t = rng.uniform(0, size);
        d[i] -= t;
        d[j] += t;
    }
    return d;
}

}  // namespace

TEST(CorrectDiagonal, RandomInstances) {
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + rng.below(7);
        std::vector<double> d(n);
        for (auto& x : d) x = rng.uniform(-2, 2);
        const auto lt = spread(d, rng, 0.5);
        ASSERT_TRUE(check_majorization(lt, d).holds);
        const auto c = correct_diagonal(d, lt);
        const double scale = 1 + *std::max_element(d.begin(), d.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        EXPECT_LT(c.diag_residual, 1e-10 * std::abs(scale));
        EXPECT_LT(oracle::max_diff(oracle::eigenvalues(c.result), sorted_ascending(lt)), 1e-10 * std::abs(scale));
        EXPECT_LE(c.steps.size(), n - 1);
        for (const auto& s : c.steps) EXPECT_NEAR(s.h_i, 0.0, 1e-12 * std::abs(scale));
        const auto report = validate_certificate(DenseHermitian::diagonal(d), lt, c);
        EXPECT_TRUE(report.ok());
    }
}

TEST(CorrectDiagonal, OffDiagonalGrowth) {
    // Each step moves at most sqrt(|h_i| (spread)) of weight off the diagonal.
    Rng rng(32);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 3 + rng.below(5);
        std::vector<double> d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<double>(k) + rng.uniform(0, 0.5);
        const double eps = std::pow(10.0, -rng.uniform(2, 8));
        std::vector<double> lt = d;
        lt.front() -= eps;
        lt.back() += eps;
        const auto c = correct_diagonal(d, lt);
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2 * std::norm(c.result(i, j));
        EXPECT_LE(std::sqrt(off), 4 * std::sqrt(eps * static_cast<double>(n) * (d.back() - d.front() + 1)));
    }
}

TEST(CorrectDiagonal, RandomDisciplines) {
    Rng rng(33);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng.below(6);
        std::vector<double> d(n);
        for (auto& x : d) x = rng.uniform(-1, 1);
        const auto lt = spread(d, rng, 0.3);
        Rng pick = rng.split(1);
        QueueDiscipline q{[&](std::size_t size) { return pick.below(size); },
                          [&] { return pick.coin() ? RootChoice::Small : RootChoice::Large; }};
        const auto c = correct_diagonal(d, lt, q);
        EXPECT_LT(c.diag_residual, 1e-10);
        EXPECT_LT(c.spectrum_residual, 1e-10);
    }
}
