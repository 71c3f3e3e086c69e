#include "shc/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "shc/error.hpp"

namespace shc {

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

MajorizationReport compare_prefix_sums(std::span<const double> lower, std::span<const double> upper,
                                       double tau_maj, double tau_trace) {
    // lower: the vector that must stay below; upper: the reference
    const std::size_t n = lower.size();
    MajorizationReport r;
    r.tau_maj = tau_maj;
    r.tau_trace = tau_trace;
    r.slacks.reserve(n > 0 ? n - 1 : 0);
    double sl = 0.0;
    double su = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
        sl += lower[k];
        su += upper[k];
        if (k + 1 < n) {
            const double slack = su - sl;
            r.slacks.push_back(slack);
            r.strict.push_back(slack > tau_maj);
            if (slack < -tau_maj) ok = false;
        }
    }
    r.trace_residual = su - sl;
    r.holds = ok && std::abs(r.trace_residual) <= tau_trace;
    return r;
}

}  // namespace

std::size_t MajorizationReport::first_violation() const {
    for (std::size_t k = 0; k < slacks.size(); ++k)
        if (slacks[k] < -tau_maj) return k + 1;
    if (std::abs(trace_residual) > tau_trace) return slacks.size() + 1;
    return 0;
}

double default_tau_maj(std::span<const double> d) { return 1e-12 * (1.0 + inf_norm(d)); }

double default_tau_trace(std::span<const double> d) {
    return 1e-12 * static_cast<double>(d.size()) * (1.0 + inf_norm(d));
}

std::vector<double> sorted_ascending(std::span<const double> v) {
    std::vector<double> s(v.begin(), v.end());
    std::stable_sort(s.begin(), s.end());
    return s;
}

MajorizationReport check_majorization(std::span<const double> lambda, std::span<const double> d,
                                      double tau_maj, double tau_trace) {
    if (lambda.size() != d.size() || d.empty())
        throw Error(ErrorCode::DimensionMismatch, "majorization operands must have equal positive length");
    if (tau_maj < 0.0 || tau_trace < 0.0) throw Error(ErrorCode::InvalidArgument, "negative tolerance");
    const auto l = sorted_ascending(lambda);
    const auto a = sorted_ascending(d);
    return compare_prefix_sums(l, a, tau_maj, tau_trace);
}

MajorizationReport check_majorization(std::span<const double> lambda, std::span<const double> d) {
    return check_majorization(lambda, d, default_tau_maj(d), default_tau_trace(d));
}

Strictness classify_strictness(const MajorizationReport& report, std::span<const double> lambda,
                               std::span<const double> d) {
    if (!report.holds) throw Error(ErrorCode::MajorizationFails, "relation does not hold", report.first_violation());
    const double ref = d.empty() ? 0.0 : d[0];
    const auto close = [&](double x) { return std::abs(x - ref) <= report.tau_maj; };
    if (std::all_of(lambda.begin(), lambda.end(), close) && std::all_of(d.begin(), d.end(), close))
        return {StrictnessClass::ScalarMatrix, 0};
    for (std::size_t k = 0; k < report.strict.size(); ++k)
        if (!report.strict[k]) return {StrictnessClass::NonStrict, k + 1};
    return {StrictnessClass::Strict, 0};
}

MajorizationReport blockwise_majorization(std::span<const double> lambda_tilde,
                                          std::span<const double> block_traces,
                                          const BlockPartition& partition, double tau_maj,
                                          double tau_trace) {
    partition.validate();
    if (lambda_tilde.size() != partition.size())
        throw Error(ErrorCode::PartitionMismatch, "spectrum length differs from partition size");
    if (block_traces.size() != partition.blocks.size())
        throw Error(ErrorCode::PartitionMismatch, "one trace per block required");
    const auto l = sorted_ascending(lambda_tilde);
    std::vector<double> sums;
    sums.reserve(partition.blocks.size());
    for (const auto& b : partition.blocks) {
        double s = 0.0;
        for (std::size_t p = b.begin; p < b.end; ++p) s += l[p];
        sums.push_back(s);
    }
    return compare_prefix_sums(sums, block_traces, tau_maj, tau_trace);
}

MajorizationReport blockwise_majorization(std::span<const double> lambda_tilde,
                                          std::span<const double> block_traces,
                                          const BlockPartition& partition) {
    return blockwise_majorization(lambda_tilde, block_traces, partition, default_tau_maj(lambda_tilde),
                                  default_tau_trace(lambda_tilde));
}

}  // namespace shc
