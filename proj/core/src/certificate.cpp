#include "shc/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "shc/error.hpp"
#include "shc/majorization.hpp"

namespace shc {

std::size_t CorrectionCertificate::rotation_count() const {
    return static_cast<std::size_t>(std::count_if(chain.begin(), chain.end(), [](const Transform& t) {
        return std::holds_alternative<GivensParams>(t);
    }));
}

void apply_transform(DenseHermitian& m, const Transform& t) {
    if (const auto* g = std::get_if<GivensParams>(&t))
        apply_givens(m, *g);
    else
        apply_block_unitary(m, std::get<BasisChange>(t).indices, std::get<BasisChange>(t).unitary);
}

DenseHermitian replay_chain(MatrixKind kind, std::span<const double> start, std::span<const Transform> chain) {
    DenseHermitian m = DenseHermitian::diagonal(start, kind);
    for (const auto& t : chain) apply_transform(m, t);
    return m;
}

FactorNorms factor_norms(std::span<const Transform> chain, std::size_t n) {
    std::size_t first_basis = chain.size();
    std::size_t last_basis = chain.size();
    for (std::size_t k = 0; k < chain.size(); ++k) {
        if (std::holds_alternative<BasisChange>(chain[k])) {
            if (first_basis == chain.size()) first_basis = k;
            last_basis = k;
        }
    }
    CMatrix g1 = CMatrix::identity(n);
    CMatrix g2 = CMatrix::identity(n);
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto* g = std::get_if<GivensParams>(&chain[k]);
        if (g == nullptr) continue;
        if (k < first_basis)
            g1 = givens_matrix(*g, n) * g1;
        else if (k > last_basis)
            g2 = givens_matrix(*g, n) * g2;
    }
    const CMatrix id = CMatrix::identity(n);
    return {(g1 - id).frobenius_norm(), (g2 - id).frobenius_norm()};
}

Transform remap(const Transform& t, std::span<const std::size_t> map) {
    if (const auto* g = std::get_if<GivensParams>(&t)) {
        GivensParams r = *g;
        r.i = map[g->i];
        r.j = map[g->j];
        return r.normalized();
    }
    BasisChange b = std::get<BasisChange>(t);
    for (auto& k : b.indices) k = map[k];
    return b;
}

void fill_residuals(CorrectionCertificate& cert, const DenseHermitian& original,
                    std::span<const double> target_diagonal, std::span<const double> lambda_tilde) {
    const std::size_t n = cert.result.size();
    if (target_diagonal.size() != n || lambda_tilde.size() != n || original.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "certificate residual operands");
    double dr = 0.0;
    for (std::size_t i = 0; i < n; ++i) dr = std::max(dr, std::abs(cert.result.diag(i) - target_diagonal[i]));
    cert.diag_residual = dr;

    const auto eig = eig_sym(cert.result);
    const auto lt = sorted_ascending(lambda_tilde);
    double sr = 0.0;
    for (std::size_t i = 0; i < n; ++i) sr = std::max(sr, std::abs(eig.eigenvalues[i] - lt[i]));
    cert.spectrum_residual = sr;
    cert.distance_to_original = fro_dist(cert.result, original);
    const auto norms = factor_norms(cert.chain, n);
    cert.gnorm1 = norms.g1;
    cert.gnorm2 = norms.g2;
}

}  // namespace shc
