#include "shc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shc/error.hpp"

namespace shc {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (rhs.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    CMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * rhs(k, j);
        }
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rhs.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
    CMatrix r(n_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - rhs.data_[k];
    return r;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::is_real() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

double unitarity_defect(const CMatrix& u) {
    return (u.adjoint() * u - CMatrix::identity(u.size())).frobenius_norm();
}

// ---------------------------------------------------------------------------

DenseHermitian::DenseHermitian(std::size_t n, MatrixKind kind)
    : n_(n), kind_(kind), upper_(n * (n + 1) / 2) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
}

DenseHermitian DenseHermitian::diagonal(std::span<const double> values, MatrixKind kind) {
    DenseHermitian a(values.size(), kind);
    for (std::size_t i = 0; i < values.size(); ++i) a.set(i, i, values[i]);
    return a;
}

DenseHermitian DenseHermitian::from_dense(const CMatrix& m, MatrixKind kind, double tol) {
    const std::size_t n = m.size();
    DenseHermitian a(n, kind);
    const double scale = std::max(1.0, m.frobenius_norm());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale)
                throw Error(ErrorCode::InvalidArgument, "matrix is not Hermitian");
            Complex v = m(i, j);
            if (i == j) v = v.real();
            if (kind == MatrixKind::RealSymmetric) {
                if (std::abs(v.imag()) > tol * scale)
                    throw Error(ErrorCode::InvalidArgument, "complex entry in a real-symmetric matrix");
                v = v.real();
            }
            a.upper_[a.packed(i, j)] = v;
        }
    }
    return a;
}

Complex DenseHermitian::operator()(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return i <= j ? upper_[packed(i, j)] : std::conj(upper_[packed(j, i)]);
}

void DenseHermitian::set(std::size_t i, std::size_t j, Complex value) {
    if (i >= n_ || j >= n_) throw Error(ErrorCode::IndexOutOfRange, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    if (i == j && value.imag() != 0.0) throw Error(ErrorCode::InvalidArgument, "diagonal entries must be real");
    if (kind_ == MatrixKind::RealSymmetric && value.imag() != 0.0)
        throw Error(ErrorCode::InvalidArgument, "complex entry in a real-symmetric matrix");
    if (i <= j)
        upper_[packed(i, j)] = value;
    else
        upper_[packed(j, i)] = std::conj(value);
}

std::vector<double> DenseHermitian::diagonal_entries() const {
    std::vector<double> d(n_);
    for (std::size_t i = 0; i < n_; ++i) d[i] = diag(i);
    return d;
}

double DenseHermitian::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += diag(i);
    return t;
}

CMatrix DenseHermitian::to_dense() const {
    CMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) {
            m(i, j) = upper_[packed(i, j)];
            m(j, i) = std::conj(m(i, j));
        }
    return m;
}

double DenseHermitian::frobenius_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) s += (i == j ? 1.0 : 2.0) * std::norm(upper_[packed(i, j)]);
    return std::sqrt(s);
}

double DenseHermitian::max_abs() const {
    double m = 0.0;
    for (const auto& z : upper_) m = std::max(m, std::abs(z));
    return m;
}

DenseHermitian DenseHermitian::as_complex() const {
    DenseHermitian c = *this;
    c.kind_ = MatrixKind::ComplexHermitian;
    return c;
}

DenseHermitian DenseHermitian::principal(std::span<const std::size_t> idx) const {
    DenseHermitian b(idx.size(), kind_);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t c = a; c < idx.size(); ++c) b.upper_[b.packed(a, c)] = (*this)(idx[a], idx[c]);
    return b;
}

DenseHermitian DenseHermitian::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != n_) throw Error(ErrorCode::DimensionMismatch, "permutation length");
    return principal(perm);
}

// ---------------------------------------------------------------------------

GivensParams GivensParams::normalized() const {
    if (i < j) return *this;
    return GivensParams{j, i, -theta, -phi, -psi};
}

namespace {

struct RotationEntries {
    Complex ii, ij, ji, jj;
};

RotationEntries rotation_entries(const GivensParams& g) {
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    if (g.is_real()) return {c, s, -s, c};
    return {std::polar(1.0, g.phi) * c, std::polar(1.0, g.psi) * s, -std::polar(1.0, -g.psi) * s,
            std::polar(1.0, -g.phi) * c};
}

}  // namespace

CMatrix givens_matrix(const GivensParams& g, std::size_t n) {
    if (g.i >= n || g.j >= n || g.i == g.j) throw Error(ErrorCode::IndexOutOfRange, "rotation plane");
    CMatrix m = CMatrix::identity(n);
    const auto r = rotation_entries(g);
    m(g.i, g.i) = r.ii;
    m(g.i, g.j) = r.ij;
    m(g.j, g.i) = r.ji;
    m(g.j, g.j) = r.jj;
    return m;
}

void apply_givens(DenseHermitian& a, const GivensParams& g) {
    const std::size_t n = a.size();
    if (g.i >= n || g.j >= n || g.i == g.j) throw Error(ErrorCode::IndexOutOfRange, "rotation plane");
    if (!a.is_complex() && !g.is_real())
        throw Error(ErrorCode::InvalidArgument, "complex rotation applied to a real-symmetric matrix");
    const std::size_t i = g.i;
    const std::size_t j = g.j;
    const auto r = rotation_entries(g);

    for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const Complex aik = a(i, k);
        const Complex ajk = a(j, k);
        a.set(i, k, r.ii * aik + r.ij * ajk);
        a.set(j, k, r.ji * aik + r.jj * ajk);
    }

    // 2x2 principal block: Y = G X G*
    const Complex xii = a(i, i), xij = a(i, j), xji = a(j, i), xjj = a(j, j);
    const Complex ti_i = r.ii * xii + r.ij * xji;  // (G X) row i
    const Complex ti_j = r.ii * xij + r.ij * xjj;
    const Complex tj_i = r.ji * xii + r.jj * xji;  // (G X) row j
    const Complex tj_j = r.ji * xij + r.jj * xjj;
    const Complex yii = ti_i * std::conj(r.ii) + ti_j * std::conj(r.ij);
    const Complex yij = ti_i * std::conj(r.ji) + ti_j * std::conj(r.jj);
    const Complex yjj = tj_i * std::conj(r.ji) + tj_j * std::conj(r.jj);
    a.set(i, i, yii.real());
    a.set(j, j, yjj.real());
    a.set(i, j, a.is_complex() ? yij : Complex(yij.real()));
}

DenseHermitian conjugate_by_givens(const DenseHermitian& a, const GivensParams& g) {
    DenseHermitian out = a;
    apply_givens(out, g);
    return out;
}

void apply_block_unitary(DenseHermitian& a, std::span<const std::size_t> idx, const CMatrix& u) {
    const std::size_t n = a.size();
    const std::size_t m = idx.size();
    if (u.size() != m) throw Error(ErrorCode::DimensionMismatch, "block unitary size");
    for (auto k : idx)
        if (k >= n) throw Error(ErrorCode::IndexOutOfRange, "block index");
    if (!a.is_complex() && !u.is_real())
        throw Error(ErrorCode::InvalidArgument, "complex unitary applied to a real-symmetric matrix");

    CMatrix full = a.to_dense();
    // rows: full[idx, :] <- U full[idx, :]
    std::vector<Complex> tmp(m);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t r = 0; r < m; ++r) {
            Complex s{};
            for (std::size_t k = 0; k < m; ++k) s += u(r, k) * full(idx[k], col);
            tmp[r] = s;
        }
        for (std::size_t r = 0; r < m; ++r) full(idx[r], col) = tmp[r];
    }
    // columns: full[:, idx] <- full[:, idx] U*
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t c = 0; c < m; ++c) {
            Complex s{};
            for (std::size_t k = 0; k < m; ++k) s += full(row, idx[k]) * std::conj(u(c, k));
            tmp[c] = s;
        }
        for (std::size_t c = 0; c < m; ++c) full(row, idx[c]) = tmp[c];
    }
    for (std::size_t i = 0; i < n; ++i) {
        a.set(i, i, full(i, i).real());
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (full(i, j) + std::conj(full(j, i)));
            a.set(i, j, a.is_complex() ? v : Complex(v.real()));
        }
    }
}

double fro_dist(const DenseHermitian& a, const DenseHermitian& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "fro_dist operands");
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s += (i == j ? 1.0 : 2.0) * std::norm(a(i, j) - b(i, j));
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

namespace {

double off_diagonal_mass(const CMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Zeroes m(p, q) with a (phase-adjusted) Jacobi rotation; accumulates into v.
void jacobi_rotate(CMatrix& m, CMatrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = m.size();
    Complex apq = m(p, q);
    if (apq.imag() != 0.0) {
        // scale coordinate q by conj(e) so that the (p, q) entry becomes |apq|
        const Complex e = apq / std::abs(apq);
        const Complex ce = std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, q) *= ce;
            v(k, q) *= ce;
        }
        for (std::size_t k = 0; k < n; ++k) m(q, k) *= e;
        apq = std::abs(apq);
    }
    const double r = apq.real();
    const double app = m(p, p).real();
    const double aqq = m(q, q).real();
    const double theta = (aqq - app) / (2.0 * r);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex mkp = m(k, p);
        const Complex mkq = m(k, q);
        m(k, p) = c * mkp - s * mkq;
        m(k, q) = s * mkp + c * mkq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex mpk = m(p, k);
        const Complex mqk = m(q, k);
        m(p, k) = c * mpk - s * mqk;
        m(q, k) = s * mpk + c * mqk;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = m(p, p).real();
    m(q, q) = m(q, q).real();
}

}  // namespace

SpectralDecomposition eig_sym(const DenseHermitian& a, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "eig_sym tolerance must be positive");
    const std::size_t n = a.size();
    CMatrix m = a.to_dense();
    CMatrix v = CMatrix::identity(n);
    const double norm = a.frobenius_norm();
    const double target = tol * norm;

    int sweep = 0;
    bool converged = off_diagonal_mass(m) <= target;
    while (!converged && sweep < kJacobiSweepBudget) {
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = 100.0 * std::abs(m(p, q));
                if (g == 0.0) continue;
                const double app = std::abs(m(p, p).real());
                const double aqq = std::abs(m(q, q).real());
                if (sweep > 4 && app + g == app && aqq + g == aqq) {
                    m(p, q) = 0.0;
                    m(q, p) = 0.0;
                    continue;
                }
                jacobi_rotate(m, v, p, q);
            }
        }
        converged = off_diagonal_mass(m) <= target;
    }
    if (!converged)
        throw Error(ErrorCode::NonConvergence,
                    "off-diagonal mass above tolerance after " + std::to_string(kJacobiSweepBudget) + " sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return m(x, x).real() < m(y, y).real(); });

    SpectralDecomposition out;
    out.sweeps = sweep;
    out.eigenvalues.resize(n);
    out.basis = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = m(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.basis(r, k) = v(r, order[k]);
    }

    // reconstruction residual
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += out.basis(i, k) * out.eigenvalues[k] * std::conj(out.basis(j, k));
            s += std::norm(a(i, j) - acc);
        }
    out.residual = std::sqrt(s);
    return out;
}

}  // namespace shc
