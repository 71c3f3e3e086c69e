#include "shc/sh_correct.hpp"

#include "engine.hpp"
#include "shc/error.hpp"
#include "shc/majorization.hpp"
#include "shc/strong_sh.hpp"

namespace shc {

CorrectionCertificate schur_horn_correct(const DenseHermitian& a, std::span<const double> lambda_tilde) {
    const std::size_t n = a.size();
    if (lambda_tilde.size() != n) throw Error(ErrorCode::DimensionMismatch, "lambda_tilde length differs from matrix");
    const auto part = block_decompose(a);

    std::vector<double> traces;
    for (const auto& b : part.blocks) {
        double t = 0.0;
        for (std::size_t p = b.begin; p < b.end; ++p) t += a.diag(part.permutation[p]);
        traces.push_back(t);
    }
    const auto d = a.diagonal_entries();
    const auto report = blockwise_majorization(lambda_tilde, traces, part, default_tau_maj(d), default_tau_trace(d));
    if (!report.holds) {
        const auto k = report.first_violation();
        throw Error(ErrorCode::MajorizationViolated, "block-wise majorization fails at block " + std::to_string(k), k);
    }

    const auto sorted = sorted_ascending(lambda_tilde);
    std::vector<detail::MergeTree> trees;
    std::vector<detail::SpectrumGroup> groups;
    for (const auto& b : part.blocks) {
        trees.push_back(detail::left_deep_tree(b.first_component, b.last_component));
        groups.push_back({b.begin, b.end, std::vector<double>(sorted.begin() + b.begin, sorted.begin() + b.end)});
    }
    return detail::correct_in_partition(a, part, trees, groups, default_tau_struct(a));
}

CorrectionCertificate schur_horn_correct_hermitian(const DenseHermitian& a, std::span<const double> lambda_tilde) {
    return schur_horn_correct(a.is_complex() ? a : a.as_complex(), lambda_tilde);
}

}  // namespace shc
