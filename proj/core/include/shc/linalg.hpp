#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace shc {

using Complex = std::complex<double>;

enum class MatrixKind { RealSymmetric, ComplexHermitian };

/// Dense square matrix, row-major. Used for eigenbases and assembled transforms.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t n) : n_(n), data_(n * n) {}

    static CMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;

    double frobenius_norm() const;
    bool is_real() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// ||U* U - I||_F
double unitarity_defect(const CMatrix& u);

/// n x n real-symmetric or complex-Hermitian matrix stored as a packed upper triangle.
/// The lower triangle is implied by conjugation and the diagonal is real.
class DenseHermitian {
public:
    DenseHermitian() = default;
    DenseHermitian(std::size_t n, MatrixKind kind);

    static DenseHermitian diagonal(std::span<const double> values,
                                   MatrixKind kind = MatrixKind::RealSymmetric);
    /// Takes the upper triangle of `m`; throws if `m` is not Hermitian to `tol`
    /// or has imaginary parts while `kind` is real.
    static DenseHermitian from_dense(const CMatrix& m, MatrixKind kind, double tol = 1e-12);

    std::size_t size() const noexcept { return n_; }
    MatrixKind kind() const noexcept { return kind_; }
    bool is_complex() const noexcept { return kind_ == MatrixKind::ComplexHermitian; }

    Complex operator()(std::size_t i, std::size_t j) const;
    /// Sets entry (i, j) and implicitly (j, i). Diagonal entries must be real.
    void set(std::size_t i, std::size_t j, Complex value);
    double diag(std::size_t i) const { return upper_[packed(i, i)].real(); }
    std::vector<double> diagonal_entries() const;
    double trace() const;

    CMatrix to_dense() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Same entries, complex-Hermitian kind.
    DenseHermitian as_complex() const;
    /// Principal submatrix on `idx` (in the given order).
    DenseHermitian principal(std::span<const std::size_t> idx) const;
    /// B(a, b) = A(perm[a], perm[b]).
    DenseHermitian permuted(std::span<const std::size_t> perm) const;

    /// Packed upper triangle in row-major order, diagonal included.
    std::span<const Complex> packed_upper() const noexcept { return upper_; }

    friend bool operator==(const DenseHermitian&, const DenseHermitian&) = default;

private:
    std::size_t packed(std::size_t i, std::size_t j) const noexcept {
        // row i of the upper triangle starts after i rows of decreasing length
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_ = 0;
    MatrixKind kind_ = MatrixKind::RealSymmetric;
    std::vector<Complex> upper_;
};

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    CMatrix basis;                    // columns are eigenvectors
    double residual = 0.0;            // ||A - Q diag(eigenvalues) Q*||_F
    int sweeps = 0;
};

/// Plane rotation on coordinates (i, j) with optional phases:
///   G(i,i) = e^{i phi} cos(theta),   G(i,j) = e^{i psi} sin(theta),
///   G(j,i) = -e^{-i psi} sin(theta), G(j,j) = e^{-i phi} cos(theta).
/// Real rotations have phi = psi = 0.
struct GivensParams {
    std::size_t i = 0;
    std::size_t j = 1;
    double theta = 0.0;
    double phi = 0.0;
    double psi = 0.0;

    /// The same matrix written with the index pair swapped, so that i < j.
    GivensParams normalized() const;
    bool is_real() const noexcept { return phi == 0.0 && psi == 0.0; }

    friend bool operator==(const GivensParams&, const GivensParams&) = default;
};

/// Dense n x n embedding of the rotation.
CMatrix givens_matrix(const GivensParams& g, std::size_t n);

inline constexpr double kDefaultEigTol = 1e-13;
inline constexpr int kJacobiSweepBudget = 30;

/// Cyclic two-sided Jacobi. Eigenvalues ascending, ties ordered by column index.
SpectralDecomposition eig_sym(const DenseHermitian& a, double tol = kDefaultEigTol);

/// G A G*; only rows/columns i and j change.
DenseHermitian conjugate_by_givens(const DenseHermitian& a, const GivensParams& g);

/// In-place variant of conjugate_by_givens.
void apply_givens(DenseHermitian& a, const GivensParams& g);

/// A <- W A W* where W is the identity except for the block `u` on rows/columns `idx`.
void apply_block_unitary(DenseHermitian& a, std::span<const std::size_t> idx, const CMatrix& u);

/// ||A - B||_F over the full matrix.
double fro_dist(const DenseHermitian& a, const DenseHermitian& b);

}  // namespace shc
