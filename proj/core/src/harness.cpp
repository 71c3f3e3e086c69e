#include "shc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/students_t.hpp>

#include "shc/diag_correct.hpp"
#include "shc/error.hpp"
#include "shc/majorization.hpp"
#include "shc/sh_correct.hpp"
#include "shc/strong_sh.hpp"

namespace shc {

namespace {

constexpr std::pair<Family, std::string_view> kFamilies[] = {
    {Family::DiagonalDistinct, "diagonal-distinct"},
    {Family::DiagonalRepeated, "diagonal-repeated"},
    {Family::Irreducible, "irreducible"},
    {Family::MixedBlock, "mixed-block"},
    {Family::HermitianIrreducible, "hermitian-irreducible"},
    {Family::HermitianMixedBlock, "hermitian-mixed-block"},
};

bool is_diagonal(Family f) { return f == Family::DiagonalDistinct || f == Family::DiagonalRepeated; }
bool is_hermitian(Family f) { return f == Family::HermitianIrreducible || f == Family::HermitianMixedBlock; }
bool is_irreducible(Family f) { return f == Family::Irreducible || f == Family::HermitianIrreducible; }

std::vector<std::size_t> shuffled(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[rng.below(k)]);
    return p;
}

Complex edge(double magnitude, bool complex, Rng& rng) {
    if (complex) return std::polar(magnitude, rng.uniform(-3.141592653589793, 3.141592653589793));
    return rng.coin() ? magnitude : -magnitude;
}

// Random spanning tree plus sparse extra edges on positions [offset, offset + size).
void fill_irreducible(DenseHermitian& a, std::size_t offset, std::size_t size, double center, Rng& rng) {
    const bool complex = a.is_complex();
    for (std::size_t k = 0; k < size; ++k) a.set(offset + k, offset + k, center + rng.uniform(-1.0, 1.0));
    const auto order = shuffled(size, rng);
    for (std::size_t k = 1; k < size; ++k) {
        const std::size_t u = order[k];
        const std::size_t v = order[rng.below(k)];
        a.set(offset + std::min(u, v), offset + std::max(u, v), edge(rng.uniform(0.5, 1.0), complex, rng));
    }
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j)
            if (a(offset + i, offset + j) == Complex{} && rng.uniform() < 0.3)
                a.set(offset + i, offset + j, edge(rng.uniform(0.2, 1.0), complex, rng));
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& x : v) x /= s;
}

// Steps whose prefix sums are the given non-positive values.
std::vector<double> from_prefix(const std::vector<double>& prefix) {
    std::vector<double> v(prefix.size() + 1);
    double prev = 0.0;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        v[k] = prefix[k] - prev;
        prev = prefix[k];
    }
    v.back() = -prev;
    return v;
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

SlopeFit fit_or_nan(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(y[k] > 0.0)) continue;
        xs.push_back(x[k]);
        ys.push_back(y[k]);
    }
    try {
        return fit_loglog(xs, ys);
    } catch (const Error&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan, nan, nan};
    }
}

QueueDiscipline random_discipline(const std::shared_ptr<Rng>& rng) {
    return {[rng](std::size_t size) { return rng->below(size); },
            [rng] { return rng->coin() ? RootChoice::Large : RootChoice::Small; }};
}

// X with every entry coupling two groups removed, where the groups are the runs of the
// ascending order of d between the prefixes at which `target` is tight against d.
DenseHermitian cut_at_tight_prefixes(const DenseHermitian& x, std::span<const double> d,
                                     std::span<const double> target) {
    const auto rep = check_majorization(target, d);
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<std::size_t> group(d.size());
    std::size_t g = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        group[order[k]] = g;
        if (k < rep.slacks.size() && std::abs(rep.slacks[k]) <= rep.tau_maj) ++g;
    }
    auto out = x;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (group[i] != group[j]) out.set(i, j, 0.0);
    return out;
}

}  // namespace

std::string_view to_string(Family f) noexcept {
    for (const auto& [k, name] : kFamilies)
        if (k == f) return name;
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (const auto& [k, n] : kFamilies)
        if (n == name) return k;
    throw Error(ErrorCode::UnknownFamily, "unknown instance family '" + std::string(name) + "'");
}

std::string_view to_string(PerturbationStyle s) noexcept {
    return s == PerturbationStyle::Adversarial ? "adversarial" : "generic";
}

PerturbationStyle parse_style(std::string_view name) {
    if (name == "adversarial") return PerturbationStyle::Adversarial;
    if (name == "generic") return PerturbationStyle::Generic;
    throw Error(ErrorCode::InvalidArgument, "unknown perturbation style '" + std::string(name) + "'");
}

Instance gen_instance(Family family, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
    if (to_string(family) == "unknown") throw Error(ErrorCode::UnknownFamily, "unknown instance family");
    Rng rng(seed);
    const auto kind = is_hermitian(family) ? MatrixKind::ComplexHermitian : MatrixKind::RealSymmetric;
    DenseHermitian built(n, kind);

    switch (family) {
        case Family::DiagonalDistinct: {
            double v = rng.uniform(-1.0, 1.0);
            for (std::size_t k = 0; k < n; ++k, v += rng.uniform(0.5, 1.5)) built.set(k, k, v);
            break;
        }
        case Family::DiagonalRepeated: {
            double v = rng.uniform(-1.0, 1.0);
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 0 && k % 2 == 0) v += rng.uniform(0.5, 1.5);
                built.set(k, k, v);
            }
            break;
        }
        case Family::Irreducible:
        case Family::HermitianIrreducible:
            fill_irreducible(built, 0, n, 0.0, rng);
            break;
        case Family::MixedBlock:
        case Family::HermitianMixedBlock: {
            std::size_t pos = 0;
            for (std::size_t b = 0; pos < n; ++b) {
                const double center = 10.0 * static_cast<double>(b);
                const std::size_t rem = n - pos;
                if (b == 0 && rem >= 3) {
                    // irreducible pair plus a scalar strictly inside its window
                    fill_irreducible(built, pos, 2, center, rng);
                    const double mid = 0.5 * (built.diag(pos) + built.diag(pos + 1));
                    const double half = 0.5 * (spectrum_window(built.principal(std::vector<std::size_t>{pos, pos + 1})).measure());
                    built.set(pos + 2, pos + 2, mid + 0.25 * half * rng.uniform(-1.0, 1.0));
                    pos += 3;
                } else if (rem >= 2) {
                    const std::size_t s = rem >= 4 && rng.coin() ? 3 : 2;
                    fill_irreducible(built, pos, s, center, rng);
                    pos += s;
                } else {
                    built.set(pos, pos, center + rng.uniform(-1.0, 1.0));
                    pos += 1;
                }
            }
            break;
        }
    }

    Instance inst;
    inst.family = family;
    inst.a = built.permuted(shuffled(n, rng));
    inst.lambda = eig_sym(inst.a).eigenvalues;
    return inst;
}

std::vector<double> Instance::direction(PerturbationStyle style, Rng& rng) const {
    const std::size_t n = lambda.size();
    std::vector<double> v(n, 0.0);
    if (n == 1) return v;

    if (is_diagonal(family)) {
        if (style == PerturbationStyle::Adversarial) {
            v.front() = -1.0;
            v.back() = 1.0;
        } else {
            std::vector<double> prefix(n - 1);
            for (double& s : prefix) s = -rng.uniform(0.1, 1.0);
            v = from_prefix(prefix);
        }
    } else if (is_irreducible(family)) {
        for (double& x : v) x = rng.uniform(-1.0, 1.0);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
        for (double& x : v) x -= mean;
    } else {
        const auto part = block_decompose(a);
        const auto& blocks = part.blocks;
        if (style == PerturbationStyle::Adversarial || blocks.size() == 1) {
            if (blocks.size() == 1) {
                v.front() = -1.0;
                v.back() = 1.0;
            } else {
                v[blocks.front().begin] = -1.0;
                v[blocks.back().end - 1] = 1.0;
            }
        } else {
            for (const auto& b : blocks) {
                if (b.size() < 2) continue;
                double mean = 0.0;
                for (std::size_t p = b.begin; p < b.end; ++p) mean += (v[p] = rng.uniform(-1.0, 1.0));
                mean /= static_cast<double>(b.size());
                for (std::size_t p = b.begin; p < b.end; ++p) v[p] -= mean;
            }
            std::vector<double> prefix(blocks.size() - 1);
            for (double& s : prefix) s = -rng.uniform(0.1, 1.0);
            const auto shift = from_prefix(prefix);
            for (std::size_t k = 0; k < blocks.size(); ++k)
                for (std::size_t p = blocks[k].begin; p < blocks[k].end; ++p)
                    v[p] += shift[k] / static_cast<double>(blocks[k].size());
        }
    }
    normalize(v);
    return v;
}

std::vector<double> Instance::perturbed(std::span<const double> direction, double eps) const {
    if (direction.size() != lambda.size()) throw Error(ErrorCode::DimensionMismatch, "direction length");
    std::vector<double> out(lambda.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = lambda[k] + eps * direction[k];
    return out;
}

CorrectionCertificate Instance::correct(std::span<const double> lambda_tilde) const {
    if (is_diagonal(family)) return correct_diagonal(a.diagonal_entries(), lambda_tilde);
    if (family == Family::Irreducible) return correct_irreducible(a, lambda_tilde);
    if (is_hermitian(family)) return schur_horn_correct_hermitian(a, lambda_tilde);
    return schur_horn_correct(a, lambda_tilde);
}

void SweepConfig::validate() const {
    if (eps_grid.size() < 2) throw Error(ErrorCode::InsufficientGrid, "slope fit needs at least two eps values");
    for (std::size_t k = 0; k < eps_grid.size(); ++k) {
        if (!(eps_grid[k] > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps values must be positive");
        if (k > 0 && !(eps_grid[k] < eps_grid[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "eps grid must be strictly decreasing");
    }
    if (trials_per_eps < 1) throw Error(ErrorCode::InvalidArgument, "at least one trial per eps");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "fit operands");
    const std::size_t m = x.size();
    if (m < 2) throw Error(ErrorCode::InsufficientGrid, "slope fit needs at least two points");
    std::vector<double> lx(m);
    std::vector<double> ly(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw Error(ErrorCode::InvalidArgument, "log-log fit needs positive data");
        lx[k] = std::log10(x[k]);
        ly[k] = std::log10(y[k]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::InsufficientGrid, "slope fit needs distinct x values");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (m == 2) {
        f.lo = -std::numeric_limits<double>::infinity();
        f.hi = std::numeric_limits<double>::infinity();
        return f;
    }
    double ssr = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double r = ly[k] - (f.intercept + f.slope * lx[k]);
        ssr += r * r;
    }
    const double dof = static_cast<double>(m - 2);
    const double se = std::sqrt(ssr / dof / sxx);
    const double q = boost::math::quantile(boost::math::students_t(dof), 0.975);
    f.lo = f.slope - q * se;
    f.hi = f.slope + q * se;
    return f;
}

SweepResult epsilon_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t ne = cfg.eps_grid.size();
    const std::size_t nt = cfg.trials_per_eps;
    std::vector<SweepRecord> grid(ne * nt);
    const Rng root(cfg.seed);
    for (std::size_t t = 0; t < nt; ++t) {
        Rng rng = root.split(t);
        const Instance inst = gen_instance(cfg.family, cfg.n, rng.next());
        const auto v = inst.direction(cfg.style, rng);
        for (std::size_t e = 0; e < ne; ++e) {
            SweepRecord& r = grid[e * nt + t];
            r.eps_index = e;
            r.eps = cfg.eps_grid[e];
            r.trial = t;
            try {
                const auto cert = inst.correct(inst.perturbed(v, r.eps));
                r.distance = cert.distance_to_original;
                r.gnorm1 = cert.gnorm1;
                r.gnorm2 = cert.gnorm2;
                r.diag_resid = cert.diag_residual;
                r.spec_resid = cert.spectrum_residual;
            } catch (const Error& err) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                r.distance = r.gnorm1 = r.gnorm2 = r.diag_resid = r.spec_resid = nan;
                r.status = std::string(to_string(err.code()));
            }
        }
    }

    SweepResult out;
    out.config = cfg;
    out.records = std::move(grid);
    for (std::size_t e = 0; e < ne; ++e) {
        std::vector<double> dist;
        std::vector<double> g1;
        std::vector<double> g2;
        for (std::size_t t = 0; t < nt; ++t) {
            const auto& r = out.records[e * nt + t];
            if (r.status != "ok") {
                ++out.failures;
                continue;
            }
            dist.push_back(r.distance);
            g1.push_back(r.gnorm1);
            g2.push_back(r.gnorm2);
        }
        out.median_distance.push_back(median(dist));
        out.median_gnorm1.push_back(median(g1));
        out.median_gnorm2.push_back(median(g2));
    }
    out.fit = fit_or_nan(cfg.eps_grid, out.median_distance);
    out.gnorm1_fit = fit_or_nan(cfg.eps_grid, out.median_gnorm1);
    out.gnorm2_fit = fit_or_nan(cfg.eps_grid, out.median_gnorm2);
    return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    os << "family,n,eps,trial,distance,gnorm1,gnorm2,diag_resid,spec_resid,status\n";
    char buf[64];
    auto num = [&](double x) -> const char* {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    };
    const auto family = to_string(r.config.family);
    for (const auto& rec : r.records) {
        os << family << ',' << r.config.n << ',' << num(rec.eps) << ',' << rec.trial;
        for (double x : {rec.distance, rec.gnorm1, rec.gnorm2, rec.diag_resid, rec.spec_resid}) os << ',' << num(x);
        os << ',' << rec.status << '\n';
    }
}

double hausdorff_upper_bound(std::span<const double> lambda1, std::span<const double> lambda2,
                             std::span<const double> d, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw Error(ErrorCode::EmptySample, "at least one sample required");
    for (auto l : {lambda1, lambda2}) {
        const auto rep = check_majorization(l, d);
        if (!rep.holds)
            throw Error(ErrorCode::MajorizationViolated, "spectrum is not majorized by d", rep.first_violation());
    }
    const Rng root(seed);
    auto directed = [&](std::span<const double> from, std::span<const double> to, std::uint64_t stream) {
        double worst = 0.0;
        for (std::size_t s = 0; s < samples; ++s) {
            const Rng base = root.split(stream).split(s);
            const auto x = correct_diagonal(d, from, random_discipline(std::make_shared<Rng>(base))).result;
            const auto twin = correct_diagonal(d, to, random_discipline(std::make_shared<Rng>(base))).result;
            double best = fro_dist(x, twin);
            for (const auto& start : {x, cut_at_tight_prefixes(x, d, to)}) {
                try {
                    best = std::min(best, fro_dist(x, schur_horn_correct(start, to).result));
                } catch (const Error&) {
                    // this start is not correctable towards `to`; other candidates still bound the distance
                }
            }
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(lambda1, lambda2, 0), directed(lambda2, lambda1, 1));
}

ValidationReport validate_certificate(const DenseHermitian& a, std::span<const double> lambda_tilde,
                                      const CorrectionCertificate& cert, const ValidationTolerances& tol) {
    ValidationReport rep;
    const std::size_t n = a.size();
    const double inf = std::numeric_limits<double>::infinity();
    rep.diag_residual = rep.spectrum_residual = rep.chain_residual = rep.orthogonality_defect = inf;
    if (lambda_tilde.size() != n || cert.start_diagonal.size() != n || cert.result.size() != n) return rep;
    const double scale = 1.0 + a.max_abs();

    DenseHermitian replayed;
    try {
        replayed = replay_chain(cert.kind, cert.start_diagonal, cert.chain);
    } catch (const Error&) {
        return rep;
    }

    rep.diag_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        rep.diag_residual = std::max(rep.diag_residual, std::abs(replayed.diag(i) - a.diag(i)));
    const auto eig = eig_sym(replayed);
    const auto lt = sorted_ascending(lambda_tilde);
    rep.spectrum_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        rep.spectrum_residual = std::max(rep.spectrum_residual, std::abs(eig.eigenvalues[i] - lt[i]));
    rep.chain_residual = fro_dist(replayed, cert.result);
    rep.orthogonality_defect = 0.0;
    for (const auto& t : cert.chain) {
        const double defect = std::holds_alternative<GivensParams>(t)
                                  ? unitarity_defect(givens_matrix(std::get<GivensParams>(t).normalized(), n))
                                  : unitarity_defect(std::get<BasisChange>(t).unitary);
        rep.orthogonality_defect = std::max(rep.orthogonality_defect, defect);
    }

    rep.diag_ok = rep.diag_residual <= tol.diag * scale;
    rep.spectrum_ok = rep.spectrum_residual <= tol.spectrum * scale;
    rep.chain_ok = rep.chain_residual <= tol.chain * scale;
    rep.orthogonality_ok = rep.orthogonality_defect <= tol.orthogonality;
    return rep;
}

}  // namespace shc
