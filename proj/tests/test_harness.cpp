#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "shc/diag_correct.hpp"
#include "shc/error.hpp"
#include "shc/harness.hpp"
#include "shc/strong_sh.hpp"

using namespace shc;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

std::string csv(const SweepConfig& cfg) {
    std::ostringstream os;
    write_sweep_csv(os, epsilon_sweep(cfg));
    return os.str();
}

}  // namespace

TEST(Rng, Reference) {
    // SplitMix64 reference outputs for seed 0
    Rng r(0);
    EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
}

TEST(Instance, Deterministic) {
    const auto a = gen_instance(Family::DiagonalDistinct, 4, 7);
    const auto b = gen_instance(Family::DiagonalDistinct, 4, 7);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.lambda, b.lambda);
}

TEST(Instance, IrreducibleIsConnected) {
    EXPECT_EQ(connected_components(gen_instance(Family::Irreducible, 5, 1).a).size(), 1u);
    for (std::uint64_t s = 0; s < 50; ++s)
        EXPECT_EQ(connected_components(gen_instance(Family::HermitianIrreducible, 2 + s % 8, s).a).size(), 1u);
}

TEST(Instance, MixedHasBlocks) {
    EXPECT_GE(block_decompose(gen_instance(Family::MixedBlock, 6, 2).a).blocks.size(), 2u);
}

TEST(Instance, Families) {
    for (auto f : {Family::DiagonalDistinct, Family::DiagonalRepeated, Family::Irreducible, Family::MixedBlock,
                   Family::HermitianIrreducible, Family::HermitianMixedBlock})
        EXPECT_EQ(parse_family(to_string(f)), f);
    EXPECT_EQ(code_of([] { parse_family("banded"); }), ErrorCode::UnknownFamily);
    EXPECT_EQ(code_of([] { gen_instance(static_cast<Family>(42), 3, 1); }), ErrorCode::UnknownFamily);
}

TEST(Sweep, AdversarialDiagonalSlope) {
    SweepConfig cfg;
    cfg.family = Family::DiagonalDistinct;
    cfg.style = PerturbationStyle::Adversarial;
    const auto r = epsilon_sweep(cfg);
    EXPECT_EQ(r.records.size(), cfg.eps_grid.size() * cfg.trials_per_eps);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_GE(r.fit.slope, 0.45);
    EXPECT_LE(r.fit.slope, 0.55);
}

TEST(Sweep, IrreducibleSlope) {
    SweepConfig cfg;
    cfg.family = Family::Irreducible;
    const auto r = epsilon_sweep(cfg);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_GE(r.fit.slope, 0.9);
    EXPECT_LE(r.fit.slope, 1.1);
}

TEST(Sweep, InsufficientGrid) {
    SweepConfig cfg;
    cfg.eps_grid = {1e-3};
    EXPECT_EQ(code_of([&] { epsilon_sweep(cfg); }), ErrorCode::InsufficientGrid);
    cfg.eps_grid = {1e-3, 1e-2};
    EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::InvalidArgument);
    cfg.eps_grid = {1e-2, 1e-3};
    cfg.trials_per_eps = 0;
    EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::InvalidArgument);
}

TEST(Sweep, Reproducible) {
    SweepConfig cfg;
    cfg.family = Family::HermitianMixedBlock;
    cfg.n = 6;
    cfg.seed = 99;
    const auto a = csv(cfg);
    EXPECT_EQ(a, csv(cfg));
    EXPECT_EQ(a.substr(0, a.find('\n')), "family,n,eps,trial,distance,gnorm1,gnorm2,diag_resid,spec_resid,status");
    cfg.seed = 100;
    EXPECT_NE(a, csv(cfg));
}

TEST(Sweep, MedianMonotone) {
    for (auto f : {Family::DiagonalDistinct, Family::DiagonalRepeated, Family::Irreducible, Family::MixedBlock,
                   Family::HermitianIrreducible, Family::HermitianMixedBlock}) {
        SweepConfig cfg;
        cfg.family = f;
        cfg.n = 6;
        const auto r = epsilon_sweep(cfg);
        for (std::size_t k = 1; k < r.median_distance.size(); ++k)
            EXPECT_LE(r.median_distance[k], r.median_distance[k - 1]) << to_string(f);
    }
}

TEST(Fit, ExactLine) {
    const std::vector<double> x{1e-2, 1e-4, 1e-6}, y{0.3, 0.03, 0.003};
    const auto f = fit_loglog(x, y);
    EXPECT_NEAR(f.slope, 0.5, 1e-12);
    EXPECT_NEAR(f.intercept, std::log10(3.0), 1e-12);
    EXPECT_NEAR(f.lo, 0.5, 1e-9);
    EXPECT_NEAR(f.hi, 0.5, 1e-9);
    const std::vector<double> one{1.0};
    EXPECT_EQ(code_of([&] { fit_loglog(one, one); }), ErrorCode::InsufficientGrid);
    const auto two = fit_loglog(std::vector<double>{1e-2, 1e-4}, std::vector<double>{1e-1, 1e-2});
    EXPECT_TRUE(std::isinf(two.hi));
}

TEST(Hausdorff, Identical) {
    const std::vector<double> d{1, 2, 3}, l{0.5, 2, 3.5};
    EXPECT_LE(hausdorff_upper_bound(l, l, d, 20, 1), 1e-10);
}

TEST(Hausdorff, SqrtScaling) {
    const double eps = 1e-6;
    const std::vector<double> d{1, 2, 3}, l1{1, 2, 3}, l2{1 - eps, 2, 3 + eps};
    const double h = hausdorff_upper_bound(l1, l2, d, 20, 1);
    EXPECT_GT(h, 0.0);
    EXPECT_LE(h, 4 * std::sqrt(eps));
}

TEST(Hausdorff, Errors) {
    const std::vector<double> d{1, 2}, l{1, 2}, bad{1.5, 1.5};
    EXPECT_EQ(code_of([&] { hausdorff_upper_bound(l, l, d, 0, 1); }), ErrorCode::EmptySample);
    EXPECT_EQ(code_of([&] { hausdorff_upper_bound(l, bad, d, 5, 1); }), ErrorCode::MajorizationViolated);
}

TEST(Validate, AcceptsPipelines) {
    for (auto f : {Family::DiagonalDistinct, Family::Irreducible, Family::MixedBlock, Family::HermitianMixedBlock}) {
        const auto inst = gen_instance(f, 5, 3);
        Rng rng(3);
        const auto lt = inst.perturbed(inst.direction(PerturbationStyle::Generic, rng), 1e-4);
        EXPECT_TRUE(validate_certificate(inst.a, lt, inst.correct(lt)).ok()) << to_string(f);
    }
}

TEST(Validate, CorruptedAngle) {
    const std::vector<double> d{1, 2, 3}, lt{0.9, 2, 3.1};
    auto c = correct_diagonal(d, lt);
    ASSERT_TRUE(validate_certificate(DenseHermitian::diagonal(d), lt, c).ok());
    for (auto& t : c.chain)
        if (auto* g = std::get_if<GivensParams>(&t)) {
            g->theta += 1e-3;
            break;
        }
    const auto r = validate_certificate(DenseHermitian::diagonal(d), lt, c);
    EXPECT_FALSE(r.diag_ok);
}

TEST(Validate, MismatchedSpectrum) {
    const std::vector<double> d{1, 2, 3}, lt{0.9, 2, 3.1}, other{0.8, 2, 3.2};
    const auto c = correct_diagonal(d, lt);
    const auto r = validate_certificate(DenseHermitian::diagonal(d), other, c);
    EXPECT_FALSE(r.spectrum_ok);
    EXPECT_TRUE(r.diag_ok);
}

TEST(Hausdorff, TightPrefix) {
    // Lambda1 meets d with equality at k = 1, so its members isolate the smallest diagonal entry
    const std::vector<double> d{0, 1, 2}, l1{0, 0.5, 2.5};
    std::vector<double> ratio;
    for (double eps : {1e-4, 1e-8}) {
        const std::vector<double> l2{-eps, 0.5, 2.5 + eps};
        ratio.push_back(hausdorff_upper_bound(l1, l2, d, 16, 3) / std::sqrt(eps));
    }
    EXPECT_LE(ratio[1], 2 * ratio[0]);
}
