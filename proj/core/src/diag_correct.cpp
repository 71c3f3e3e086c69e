#include "shc/diag_correct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "shc/error.hpp"
#include "shc/majorization.hpp"

namespace shc {

CorrectionCertificate correct_diagonal(std::span<const double> d, std::span<const double> lambda_tilde,
                                       const QueueDiscipline& discipline) {
    const std::size_t n = d.size();
    if (lambda_tilde.size() != n || n == 0)
        throw Error(ErrorCode::DimensionMismatch, "d and lambda_tilde must have equal positive length");
    const auto report = check_majorization(lambda_tilde, d);
    if (!report.holds) {
        const auto k = report.first_violation();
        throw Error(ErrorCode::MajorizationViolated,
                    "lambda_tilde is not majorized by d at partial sum " + std::to_string(k), k);
    }

    std::vector<std::size_t> order(n);  // sorted position -> caller index
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> target(n);
    for (std::size_t k = 0; k < n; ++k) target[k] = d[order[k]];
    const auto start = sorted_ascending(lambda_tilde);

    const double tau = default_tau_trace(d);
    DenseHermitian m = DenseHermitian::diagonal(start);
    std::vector<double> h(n);
    for (std::size_t k = 0; k < n; ++k) h[k] = start[k] - target[k];

    std::vector<Transform> chain;
    std::vector<CorrectionStep> steps;
    std::set<std::size_t> queue;

    std::size_t k = 0;
    while (true) {
        for (; k < n && h[k] <= tau; ++k)
            if (h[k] < -tau) queue.insert(k);
        if (k == n) break;

        const std::size_t j = k;
        while (h[j] > tau) {
            if (queue.empty())
                throw Error(ErrorCode::MajorizationViolated, "surplus without a pending deficit", j + 1);
            auto it = queue.begin();
            if (discipline.pick) std::advance(it, std::min(discipline.pick(queue.size()), queue.size() - 1));
            const std::size_t i = *it;
            queue.erase(it);

            const TwoByTwoProblem p{m.diag(i), m.diag(j), m(i, j), target[i], target[j]};
            GivensParams g = solve_correction_angle(p, discipline.root ? discipline.root() : RootChoice::Small);
            g.i = i;
            g.j = j;
            apply_givens(m, g);
            h[i] = m.diag(i) - target[i];
            h[j] = m.diag(j) - target[j];

            chain.emplace_back(g);
            steps.push_back({order[i], order[j], std::get<GivensParams>(remap(g, order)), h[i], h[j]});
        }
        if (h[j] < -tau) queue.insert(j);
        k = j + 1;
    }

    std::vector<std::size_t> position(n);  // caller index -> sorted position
    for (std::size_t p = 0; p < n; ++p) position[order[p]] = p;

    CorrectionCertificate cert;
    cert.kind = MatrixKind::RealSymmetric;
    cert.start_diagonal.resize(n);
    for (std::size_t p = 0; p < n; ++p) cert.start_diagonal[order[p]] = start[p];
    cert.chain.reserve(chain.size());
    for (const auto& t : chain) cert.chain.push_back(remap(t, order));
    cert.result = m.permuted(position);
    cert.steps = std::move(steps);
    fill_residuals(cert, DenseHermitian::diagonal(d), d, lambda_tilde);
    return cert;
}

CorrectionCertificate correct_diagonal(std::span<const double> d, std::span<const double> lambda_tilde) {
    return correct_diagonal(d, lambda_tilde, QueueDiscipline{});
}

std::vector<CorrectionStep> correction_trace(std::span<const double> d, std::span<const double> lambda_tilde) {
    return correct_diagonal(d, lambda_tilde).steps;
}

}  // namespace shc
