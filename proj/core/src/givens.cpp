#include "shc/givens.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "shc/error.hpp"

namespace shc {

double TwoByTwoProblem::discriminant() const noexcept {
    return 4.0 * (std::norm(b12) - (b22 - d1) * (b11 - d1));
}

double TwoByTwoProblem::discriminant_tolerance() const noexcept {
    const double s = 1.0 + std::abs(b11) + std::abs(b22) + std::abs(b12);
    return 1e-12 * s * s;
}

DenseHermitian problem_matrix(const TwoByTwoProblem& p) {
    const bool complex = p.b12.imag() != 0.0;
    DenseHermitian b(2, complex ? MatrixKind::ComplexHermitian : MatrixKind::RealSymmetric);
    b.set(0, 0, p.b11);
    b.set(1, 1, p.b22);
    b.set(0, 1, p.b12);
    return b;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Angle solving (b22 - d1) t^2 + 2 b t + (b11 - d1) = 0 for t = tan(theta), with a
// real off-diagonal b. Returns nullopt-like NaN when infeasible.
double real_angle(double b11, double b22, double b, double d1, double tau, RootChoice root) {
    const double f = d1 - b11;
    const double q = b22 - d1;
    double disc = b * b + f * q;  // Delta / 4
    if (4.0 * disc < -tau) return std::numeric_limits<double>::quiet_NaN();
    if (disc < 0.0) disc = 0.0;
    const double sq = std::sqrt(disc);

    if (b != 0.0) {
        // denominator form, sign matched to b: no cancellation
        const double t_small = f / (b + std::copysign(sq, b));
        if (root == RootChoice::Small) return std::atan(t_small);
        if (q == 0.0) return kHalfPi;  // linear equation: the other root is at infinity
        return std::atan(-2.0 * b / q - t_small);
    }
    if (f == 0.0) return root == RootChoice::Small ? 0.0 : (q == 0.0 ? 0.0 : kHalfPi);
    if (sq == 0.0) return root == RootChoice::Small ? kHalfPi : -kHalfPi;  // swap the diagonal
    const double t = std::abs(f) / sq;
    return root == RootChoice::Small ? std::atan(t) : -std::atan(t);
}

}  // namespace

GivensParams solve_correction_angle(const TwoByTwoProblem& p, RootChoice root) {
    const double theta = real_angle(p.b11, p.b22, p.b12.real(), p.d1, p.discriminant_tolerance(), root);
    if (std::isnan(theta)) throw Error(ErrorCode::Infeasible, "negative discriminant: (1,1) target unreachable");
    return GivensParams{0, 1, theta, 0.0, 0.0};
}

namespace {

GivensParams in_form(GivensParams g, PhaseForm form) {
    if (form == PhaseForm::NearIdentity && g.phi != 0.0) {
        g.psi -= g.phi;
        g.phi = 0.0;
    }
    return g;
}

GivensParams diagonal_phase_rotation(const TwoByTwoProblem& p, RootChoice root) {
    const double re = p.b12.real();
    const double im = p.b12.imag();
    const double tau = p.discriminant_tolerance();
    if (std::abs(re) >= std::abs(im)) {
        const double theta = real_angle(p.b11, p.b22, re, p.d1, tau, root);
        if (!std::isnan(theta)) return GivensParams{0, 1, theta, 0.0, 0.0};
    } else {
        // G = [[i c, s], [-s, -i c]]: (1,1) = c^2 b11 + s^2 b22 - 2 c s Im(b12)
        const double theta = real_angle(p.b11, p.b22, -im, p.d1, tau, root);
        if (!std::isnan(theta)) return GivensParams{0, 1, theta, kHalfPi, 0.0};
    }
    // Neither component alone reaches the target; rotate the phase onto |b12|.
    const double theta = real_angle(p.b11, p.b22, std::abs(p.b12), p.d1, tau, root);
    if (std::isnan(theta)) throw Error(ErrorCode::Infeasible, "negative discriminant: (1,1) target unreachable");
    return GivensParams{0, 1, theta, -std::arg(p.b12), 0.0};
}

}  // namespace

GivensParams solve_correction_angle_hermitian(const TwoByTwoProblem& p, RootChoice root, PhaseForm form) {
    return in_form(diagonal_phase_rotation(p, root), form);
}

CorrectionScenario classify_scenario(const TwoByTwoProblem& p, double alpha, double beta, double zero_tol) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
    const double scale = 1.0 + std::abs(p.b11) + std::abs(p.b22);
    if (std::abs(p.b12) > zero_tol * scale) return {ScenarioCase::B12Nonzero, alpha, alpha};
    if (std::abs(p.d1 - p.d2) > zero_tol * (1.0 + std::abs(p.d1) + std::abs(p.d2)))
        return {ScenarioCase::ZeroOffDistinct, alpha / 2.0, alpha / 2.0};
    if (alpha > beta) return {ScenarioCase::ZeroOffEqualAlphaGtBeta, (alpha - beta) / 2.0, (alpha + beta) / 2.0};
    return {ScenarioCase::ZeroOffEqualAlphaLeBeta, 0.0, alpha};
}

}  // namespace shc
