#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shc/certificate.hpp"
#include "shc/linalg.hpp"
#include "shc/partition.hpp"
#include "shc/rng.hpp"

namespace shc {

enum class Family {
    DiagonalDistinct,
    DiagonalRepeated,
    Irreducible,
    MixedBlock,
    HermitianIrreducible,
    HermitianMixedBlock,
};

std::string_view to_string(Family f) noexcept;
/// Throws UnknownFamily.
Family parse_family(std::string_view name);

enum class PerturbationStyle { Adversarial, Generic };

std::string_view to_string(PerturbationStyle s) noexcept;
PerturbationStyle parse_style(std::string_view name);

/// A seeded test matrix and the perturbation directions admissible for its pipeline.
struct Instance {
    Family family = Family::DiagonalDistinct;
    DenseHermitian a;
    std::vector<double> lambda;  // ascending eigenvalues of a

    /// Unit direction v with lambda + eps v admissible for the family's pipeline for small eps:
    /// diagonal families need every prefix sum <= 0, block families need it at block
    /// boundaries, irreducible families only a zero sum.
    std::vector<double> direction(PerturbationStyle style, Rng& rng) const;
    std::vector<double> perturbed(std::span<const double> direction, double eps) const;

    /// Runs the family's pipeline.
    CorrectionCertificate correct(std::span<const double> lambda_tilde) const;
};

/// Deterministic in (family, n, seed). Throws UnknownFamily for out-of-range values.
Instance gen_instance(Family family, std::size_t n, std::uint64_t seed);

struct SweepConfig {
    Family family = Family::DiagonalDistinct;
    std::size_t n = 4;
    std::vector<double> eps_grid{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    std::size_t trials_per_eps = 5;
    std::uint64_t seed = 1;
    PerturbationStyle style = PerturbationStyle::Generic;

    /// Throws InvalidArgument, or InsufficientGrid for fewer than two grid points.
    void validate() const;
};

struct SweepRecord {
    std::size_t eps_index = 0;
    double eps = 0.0;
    std::size_t trial = 0;
    double distance = 0.0;
    double gnorm1 = 0.0;
    double gnorm2 = 0.0;
    double diag_resid = 0.0;
    double spec_resid = 0.0;
    std::string status = "ok";  // "ok" or the error code name
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double lo = 0.0;  // 95% band
    double hi = 0.0;
};

/// Least squares of log10(y) on log10(x). Throws InsufficientGrid for fewer than two points.
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRecord> records;  // ordered by (eps index, trial)
    std::vector<double> median_distance;
    std::vector<double> median_gnorm1;
    std::vector<double> median_gnorm2;
    SlopeFit fit;
    SlopeFit gnorm1_fit;  // NaN slope when some median is zero
    SlopeFit gnorm2_fit;
    std::size_t failures = 0;
};

/// One instance and one perturbation direction per trial, reused across the eps grid.
SweepResult epsilon_sweep(const SweepConfig& cfg);

/// `family,n,eps,trial,distance,gnorm1,gnorm2,diag_resid,spec_resid,status`, 17 significant digits.
void write_sweep_csv(std::ostream& os, const SweepResult& r);

/// max over sampled members X of the class of (Lambda1, d) of the smallest distance to a
/// constructed member of the class of (Lambda2, d), symmetrised over the two arguments.
/// Samples come from randomised queue orders and root choices. An upper-bound surrogate only.
///
/// Throws MajorizationViolated, EmptySample.
double hausdorff_upper_bound(std::span<const double> lambda1, std::span<const double> lambda2,
                             std::span<const double> d, std::size_t samples, std::uint64_t seed);

struct ValidationTolerances {
    double diag = 1e-10;
    double spectrum = 1e-8;
    double chain = 1e-10;
    double orthogonality = 1e-12;
};

struct ValidationReport {
    bool diag_ok = false;
    bool spectrum_ok = false;
    bool chain_ok = false;
    bool orthogonality_ok = false;
    double diag_residual = 0.0;
    double spectrum_residual = 0.0;
    double chain_residual = 0.0;
    double orthogonality_defect = 0.0;

    bool ok() const noexcept { return diag_ok && spectrum_ok && chain_ok && orthogonality_ok; }
};

/// Replays the chain from diag(start_diagonal) and checks it against diag(A), sort(lambda_tilde)
/// and cert.result with an independent eigensolve. Tolerances scale with 1 + max|a_ij|.
ValidationReport validate_certificate(const DenseHermitian& a, std::span<const double> lambda_tilde,
                                      const CorrectionCertificate& cert, const ValidationTolerances& tol = {});

}  // namespace shc
