// optomech.hpp — steady-state analysis of a mechanical resonator coupled
// quadratically to a resonantly driven cavity mode.
//
// The cavity shifts the mechanical spring constant (optical spring effect).
// For softening coupling (g < 0) the spring constant k_eff = k(1 − Ω²/Ω_c²)
// vanishes at the critical drive Ω_c = sqrt(−γ_c²ω_m/(16g)); above it the
// origin destabilizes and a pitchfork pair of displaced equilibria
// Q_s = ±[(Ω_c² − Ω²)/(g·ω_m)]^{1/4} appears (spontaneous symmetry breaking),
// about which k_eff = 4k(1 − Ω_c²/Ω²).
//
// Substituting the drive-dependent effective frequency into the damped
// resonator's eigenvalue formula produces two exceptional points as the drive
// is ramped: EP1 below Ω_c where ω_eff drops to γ_m/2, and EP2 above Ω_c
// where the re-stiffened 2ω_m·sqrt(1 − Ω_c²/Ω²) passes γ_m/2 again.  Between
// them the spectrum is purely imaginary (symmetry unbroken); outside, the
// real parts bifurcate.
//
// Stability labels here are those of the adiabatic (instantaneous-field)
// description: the displaced equilibria are minima of the effective potential
// U_eff(Q) = ω_m Q²/2 + (2Ω²/γ_c)·arctan(4gQ²/γ_c).  The retardation of the
// cavity response adds an anti-damping contribution at the displaced
// equilibria (see ssb_retardation_antidamping); the full-system linearization
// is available through the Jacobian helpers in dynamics.hpp.

#pragma once

#include <complex>
#include <vector>

#include "aptmech/resonator.hpp"

namespace aptmech {

struct OptomechParams {
    ResonatorParams resonator;
    double g = 0.0;        // quadratic coupling (rad/s); sign selects the physics
    double gamma_c = 0.0;  // cavity energy decay rate (rad/s), > 0
    double Omega = 0.0;    // drive strength (rad/s), >= 0
    // Optical and drive frequencies are recorded for bookkeeping only; the
    // rotating-frame analysis requires them equal (resonant drive).
    double omega_c = 0.0;
    double omega_L = 0.0;
};

void validate(const OptomechParams& p);

// The adiabatic formulas assume γ_c ≫ ω_m; true when γ_c < 10·ω_m.
bool adiabatic_regime_warning(const OptomechParams& p);

enum class SteadyStateRegime {
    SubCritical,       // g < 0, Ω <= Ω_c: single branch at the origin
    SuperCriticalSsb,  // g < 0, Ω > Ω_c: origin unstable + two displaced branches
    PositiveCoupling,  // g > 0 (or g = 0): origin only, always stable
};

const char* to_string(SteadyStateRegime regime);

struct SteadyBranch {
    double Q_s = 0.0;
    double P_s = 0.0;
    cplx alpha_s{0.0, 0.0};
    bool stable = true;  // adiabatic stability label
};

struct SteadyStateSolution {
    std::vector<SteadyBranch> branches;  // origin first, then +Q_s, −Q_s
    SteadyStateRegime regime = SteadyStateRegime::PositiveCoupling;
};

struct EpResult {
    double omega_c = 0.0;    // critical drive Ω_c
    double omega_ep1 = 0.0;  // Ω_c·sqrt(1 − (γ_m/2ω_m)²)
    double omega_ep2 = 0.0;  // Ω_c/sqrt(1 − (γ_m/4ω_m)²), consistent with the
                             // displaced-branch eigenvalues
    double omega_ep2_printed_eq9 = 0.0;  // Ω_c/sqrt(1 − (γ_m/2ω_m)²): the
                             // published closed form, kept for comparison; it
                             // disagrees with the eigenvalue discriminant by a
                             // relative (3/32)(γ_m/ω_m)²
    double omega_ep1_bisect = 0.0;  // bisection on the eigenvalue discriminants,
    double omega_ep2_bisect = 0.0;  // as an independent numeric confirmation
};

enum class DriveRegime { SubCritical, SuperCritical };

struct DriveEigenvalues {
    cplx lambda_plus;   // stable-branch effective-Hamiltonian eigenvalues
    cplx lambda_minus;
    double omega_eff_sq = 0.0;  // ω_eff² about the relevant stable branch
    DriveRegime regime = DriveRegime::SubCritical;
    // Above Ω_c the origin keeps its own linearization with imaginary
    // effective frequency (ω_eff² < 0): one growing mode.  Plotted dashed.
    bool has_unstable_branch = false;
    cplx unstable_lambda_plus;
    cplx unstable_lambda_minus;
    double omega_eff_sq_origin = 0.0;
};

// Ω_c = sqrt(−γ_c²ω_m/(16g)).  Requires softening coupling; for g >= 0 no
// symmetry-breaking transition exists and std::domain_error is thrown.
double critical_drive(const OptomechParams& p);

// All steady-state branches with the adiabatic stability label.  The boundary
// Ω = Ω_c belongs to the sub-critical regime.
SteadyStateSolution steady_states(const OptomechParams& p);

// U_eff(Q) in units of ħ·rad/s; stationary points coincide with the
// steady-state branch positions.
double effective_potential(const OptomechParams& p, double Q);

struct SpringResult {
    double k_eff = 0.0;
    double omega_eff = 0.0;     // sqrt(max(k_eff/m, 0))
    double omega_eff_sq = 0.0;  // k_eff/m, sign preserved
    DriveRegime regime = DriveRegime::SubCritical;
};

// Effective spring constant about the relevant stable branch: k(1 − Ω²/Ω_c²)
// up to Ω_c, then 4k(1 − Ω_c²/Ω²).  Requires g < 0.
SpringResult effective_spring_constant(const OptomechParams& p);

// ω_eff² of the origin branch, sign preserved (negative above Ω_c).
double origin_curvature_sq(const OptomechParams& p);

// Effective-Hamiltonian eigenvalues λ± = −iγ_m/2 ± i·sqrt((γ_m/2)² − ω_eff²)
// with ω_eff from effective_spring_constant, plus the origin-branch
// linearization above Ω_c.
DriveEigenvalues eigenvalues_vs_drive(const OptomechParams& p);

// Closed-form EP drives plus bisection confirmations on the discriminants of
// the two regime eigenvalue formulas.  Requires g < 0 and γ_m < 2ω_m.
EpResult locate_eps(const OptomechParams& p);

// Anti-damping rate contributed by the finite cavity response time at the
// displaced equilibria, to first order in d/dt / (γ_c/2).  The displaced
// branch is a dynamically stable focus of the full mean-field system only
// when γ_m exceeds this rate.  Requires g < 0 and Ω > Ω_c.
double ssb_retardation_antidamping(const OptomechParams& p);

}  // namespace aptmech
