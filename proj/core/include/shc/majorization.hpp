#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shc/partition.hpp"

namespace shc {

/// Partial-sum comparison of ascending-sorted vectors.
/// Partial-sum indices k are 1-based throughout: slacks[k-1] belongs to k.
struct MajorizationReport {
    std::vector<double> slacks;  // slack_k = sum_{i<=k} d_up - sum_{i<=k} lambda_up, k = 1..n-1
    double trace_residual = 0.0; // sum d - sum lambda
    std::vector<bool> strict;    // slack_k > tau_maj
    bool holds = false;
    double tau_maj = 0.0;
    double tau_trace = 0.0;

    /// Smallest k with slack_k < -tau_maj; n if only the trace fails; 0 if the relation holds.
    std::size_t first_violation() const;
};

/// tau_maj = 1e-12 (1 + ||d||_inf)
double default_tau_maj(std::span<const double> d);
/// tau_trace = 1e-12 n (1 + ||d||_inf)
double default_tau_trace(std::span<const double> d);

std::vector<double> sorted_ascending(std::span<const double> v);

/// Reports whether lambda is majorized by d (lambda "more spread" than d).
MajorizationReport check_majorization(std::span<const double> lambda, std::span<const double> d,
                                      double tau_maj, double tau_trace);
MajorizationReport check_majorization(std::span<const double> lambda, std::span<const double> d);

enum class StrictnessClass { ScalarMatrix, Strict, NonStrict };

struct Strictness {
    StrictnessClass kind = StrictnessClass::Strict;
    std::size_t k = 0;  // first non-strict partial-sum index (1-based) for NonStrict
};

/// Throws MajorizationFails if the report does not hold.
Strictness classify_strictness(const MajorizationReport& report, std::span<const double> lambda,
                               std::span<const double> d);

/// Block-level relation: lambda_tilde is sorted ascending and dealt to the blocks of
/// `partition` in order; the per-block sums are compared with `block_traces` by prefix sums.
MajorizationReport blockwise_majorization(std::span<const double> lambda_tilde,
                                          std::span<const double> block_traces,
                                          const BlockPartition& partition);
MajorizationReport blockwise_majorization(std::span<const double> lambda_tilde,
                                          std::span<const double> block_traces,
                                          const BlockPartition& partition, double tau_maj,
                                          double tau_trace);

}  // namespace shc
