#pragma once

#include "shc/linalg.hpp"

namespace shc {

/// 2x2 diagonal-correction problem: find G with (G B G*)(1,1) = d1 where
/// B = [[b11, b12], [conj(b12), b22]]. d2 only describes the scenario; the
/// rotation itself is determined by b11, b12, b22 and d1.
struct TwoByTwoProblem {
    double b11 = 0.0;
    double b22 = 0.0;
    Complex b12{};
    double d1 = 0.0;
    double d2 = 0.0;

    double f() const noexcept { return d1 - b11; }
    double g() const noexcept { return b22 - d2; }
    /// Delta = 4 (|b12|^2 - (b22 - d1)(b11 - d1))
    double discriminant() const noexcept;
    /// 1e-12 (1 + |b11| + |b22| + |b12|)^2
    double discriminant_tolerance() const noexcept;
};

enum class RootChoice {
    Small,  // the root with the smaller |t|; the non-negative one when b12 = 0
    Large,  // the other root of the quadratic (or -t when b12 = 0)
};

/// Real case. Returns a rotation on the plane (0, 1) with theta in [-pi/2, pi/2].
/// Throws Infeasible when Delta < -tau_disc. Uses Re(b12).
GivensParams solve_correction_angle(const TwoByTwoProblem& p, RootChoice root = RootChoice::Small);

/// DiagonalPhase: the phase sits on the diagonal (phi), e.g. [[ic, s], [-s, -ic]] for the
/// imaginary branch. NearIdentity moves it to the off-diagonal, (0, psi - phi): the same
/// matrix up to the left factor diag(e^{i phi}, e^{-i phi}), hence the same diagonal and
/// spectrum after conjugation, but tending to I as theta -> 0.
enum class PhaseForm { DiagonalPhase, NearIdentity };

/// Complex case. Real rotation on Re(b12) when the real part dominates, otherwise the
/// phi = pi/2 rotation driven by -Im(b12).
GivensParams solve_correction_angle_hermitian(const TwoByTwoProblem& p, RootChoice root = RootChoice::Small,
                                              PhaseForm form = PhaseForm::DiagonalPhase);

enum class ScenarioCase { B12Nonzero, ZeroOffDistinct, ZeroOffEqualAlphaGtBeta, ZeroOffEqualAlphaLeBeta };

struct CorrectionScenario {
    ScenarioCase case_id = ScenarioCase::B12Nonzero;
    double gamma = 0.0;  // |theta| = Theta(eps^gamma)
    double delta = 0.0;  // ||B~ - B||_F = O(eps^delta)
};

/// f = Theta(eps^alpha), g = Theta(eps^beta). `zero_tol` decides b12 = 0 and d1 = d2.
CorrectionScenario classify_scenario(const TwoByTwoProblem& p, double alpha, double beta,
                                     double zero_tol = 1e-12);

/// The 2x2 matrix B of the problem.
DenseHermitian problem_matrix(const TwoByTwoProblem& p);

}  // namespace shc
