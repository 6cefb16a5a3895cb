// resonator.hpp — non-Hermitian effective Hamiltonian of a damped mechanical
// resonator and its closed-form eigenstructure.
//
// A resonator with frequency ω_m and energy damping rate γ_m, written in the
// (⟨b⟩, ⟨b†⟩) mode-amplitude basis, evolves as i d/dt (b, b†)ᵀ = H (b, b†)ᵀ
// with
//
//     H = [ ω_m − iγ_m/2      iγ_m/2     ]
//         [  iγ_m/2       −ω_m − iγ_m/2  ]    (units of angular frequency)
//
// H anticommutes with the parity-time operation: σ_x H* σ_x = −H, where the
// parity σ_x swaps b ↔ b† and time reversal is complex conjugation.  Its
// eigenvalues
//
//     λ± = −iγ_m/2 ± i·sqrt((γ_m/2)² − ω_m²)
//
// are purely imaginary for γ_m > 2ω_m (over-damping, symmetry unbroken) and
// split into a conjugate-real pair for γ_m < 2ω_m (under-damping, symmetry
// broken); the two branches coalesce at γ_m = 2ω_m, an exceptional point that
// coincides with critical damping.
//
// Branch convention: the square root of a negative real is taken as
// +i·sqrt(|·|), so λ+ is the slow-decaying mode in the unbroken phase and the
// negative-real branch in the broken phase ((ω_m, γ_m) = (1, 0) gives
// λ± = ∓1).  Eigenvector ratios β±/β±′ = −i(2ω_m/γ_m) ± sqrt(1 − (2ω_m/γ_m)²)
// follow the same branch.

#pragma once

#include <array>
#include <complex>

namespace aptmech {

using cplx = std::complex<double>;

// Mechanical resonator parameters. All rates are angular (rad/s); the mass is
// carried along for sensing applications only.
struct ResonatorParams {
    double omega_m = 0.0;  // resonant angular frequency, > 0
    double gamma_m = 0.0;  // energy damping rate, >= 0
    double mass = 1.0;     // mechanical mass (kg), > 0

    double quality_factor() const { return omega_m / gamma_m; }
    double spring_constant() const { return mass * omega_m * omega_m; }
};

// Throws std::invalid_argument on non-finite or out-of-range values.
void validate(const ResonatorParams& p);

// 2x2 complex matrix in the fixed basis: index 0 is ⟨b⟩, index 1 is ⟨b†⟩.
struct EffectiveHamiltonian {
    std::array<std::array<cplx, 2>, 2> m{};

    cplx trace() const { return m[0][0] + m[1][1]; }
    // Plain determinant; eigen_numeric uses a compensated evaluation instead.
    cplx determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    double max_abs() const;
};

enum class DampingPhase {
    UnderDampingAptBroken,    // γ_m < 2ω_m: oscillatory decay, symmetry broken
    CriticalDampingEp,        // γ_m = 2ω_m within tolerance: exceptional point
    OverDampingAptSymmetric,  // γ_m > 2ω_m: monotone decay, symmetry unbroken
};

const char* to_string(DampingPhase phase);

// Relative tolerance band for the exceptional-point classification:
// |γ_m/(2ω_m) − 1| < kEpBand counts as the EP.
inline constexpr double kEpBand = 1e-9;

DampingPhase classify_phase(double omega_m, double gamma_m);

struct EigenSolution {
    cplx lambda_plus;   // slow branch (unbroken) / negative-real branch (broken)
    cplx lambda_minus;
    cplx ratio_plus;    // β+/β+′; may be infinite for γ_m = 0
    cplx ratio_minus;   // β−/β−′
    std::array<cplx, 2> vec_plus;   // unit-norm eigenvectors, finite always,
    std::array<cplx, 2> vec_minus;  // second component real and >= 0
    DampingPhase phase = DampingPhase::UnderDampingAptBroken;
    bool degenerate = false;  // eigenvectors coalesced (defective matrix)
};

// Exact matrix above; rejects non-finite or invalid parameters.
EffectiveHamiltonian build_hamiltonian(const ResonatorParams& p);

// Entrywise max of |σ_x H* σ_x + H|.  Zero (to rounding) for any matrix from
// build_hamiltonian; a deliberately corrupted entry shows up at full size.
double check_anti_pt(const EffectiveHamiltonian& h);

// Closed-form eigenvalues, eigenvector ratios and phase label from (ω_m, γ_m).
// Stable against the two cancellation corners (γ_m ≫ ω_m and γ_m ≪ ω_m), so
// the trace/determinant identities λ+ + λ− = −iγ_m, λ+·λ− = −ω_m² hold to a
// few ulp across the whole parameter range.
EigenSolution eigen_analytic(const ResonatorParams& p);

// Same solution computed from the matrix entries alone (quadratic on the
// characteristic polynomial, compensated determinant, stable small root via
// det/big).  Pairs its two roots to the eigen_analytic convention by nearest
// match.  A defective (EP) matrix sets the degenerate flag rather than failing.
EigenSolution eigen_numeric(const EffectiveHamiltonian& h);

struct PtEigenstateResult {
    bool plus = false;   // σ_x·conj(Ψ+) proportional to Ψ+
    bool minus = false;
    bool degenerate = false;  // EP: answer reported for the coalesced vector
};

// Tests whether each eigenvector is an eigenstate of the parity-time
// operation (proportionality with relative tolerance).  True for both exactly
// in the unbroken phase; at the EP the coalesced vector gives the
// unbroken-side answer with the degenerate flag raised.
PtEigenstateResult pt_eigenstate_test(const EigenSolution& sol);

}  // namespace aptmech
