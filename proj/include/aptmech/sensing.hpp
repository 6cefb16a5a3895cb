// sensing.hpp — frequency-splitting response near the drive-induced
// exceptional points and its use for nanoparticle mass detection.
//
// A perturbation δ of the mechanical frequency enters the drive-dependent
// eigenvalues both directly and through Ω_c (which is proportional to ω_m at
// fixed g, γ_c).  The observable is the symmetric real splitting
// ω_{m,±} = ±|Re λ±|.  At the exceptional points the splitting responds as a
// square root of δ with prefactor sqrt(ω_m/γ_m):
//
//     ω_{m,±}/γ_m ≈ ±sqrt(ω_m/γ_m)·sqrt(δ/γ_m)      at Ω = Ω_EP1 (δ > 0)
//     ω_{m,±}/γ_m ≈ ±2·sqrt(ω_m/γ_m)·sqrt(−δ/γ_m)   at Ω = Ω_EP2 (δ < 0)
//
// versus the linear ±(ω_m + δ) (below) and ±2(ω_m + δ) (above) far from the
// EPs.  An adhering particle of mass m_p shifts the frequency by
// δ ≈ −(ω_m/2)(m_p/m), giving ω_{m,±}/γ_m ≈ ±√2(ω_m/γ_m)·sqrt(m_p/m) at EP2,
// resolvable against the linewidth when m_p/m ≥ 1/(8Q_m²).

#pragma once

#include "aptmech/optomech.hpp"

namespace aptmech {

struct SplittingResult {
    double omega_plus = 0.0;   // >= 0; omega_minus = −omega_plus always
    double omega_minus = 0.0;
    bool resolvable = false;        // |ω+ − ω−| > γ_m
    double decay_splitting = 0.0;   // |Im λ+ − Im λ−| when the real splitting
                                    // closes (unbroken phase), else 0
    bool wrong_sign_delta = false;  // near-EP formula fed the closing sign
    bool validity_warning = false;  // |δ| beyond the near-EP asymptotic range
};

struct MassPerturbation {
    double m_p = 0.0;    // particle mass (kg)
    double delta = 0.0;  // induced frequency shift −(ω_m/2)(m_p/m), rad/s
};

struct SensitivityResult {
    double plus = 0.0;   // dω_{m,+}/dω_m
    double minus = 0.0;  // = −plus
    int regime = 0;      // −1 below EP1, 0 between the EPs, +1 above EP2
    bool diverged = false;  // at an EP the derivative has no finite value
};

enum class EpIndex { Ep1, Ep2 };
enum class FarRegime { BelowEp1, AboveEp2 };

// Ground truth: the regime-appropriate exact eigenvalue formula evaluated at
// ω_m + δ everywhere, including inside Ω_c.  Requires g < 0 and ω_m + δ > 0.
SplittingResult splitting_exact(const OptomechParams& p, double delta);

// Closed-form derivative dω_{m,±}/dω_m, taken with g, γ_c, Ω fixed (so Ω_c
// varies through its ω_m dependence).  Signals divergence inside the EP
// bands instead of returning a value.
SensitivityResult sensitivity_analytic(const OptomechParams& p);

// Square-root response at the chosen EP.  The closing sign of δ gives a zero
// real splitting with wrong_sign_delta set; |δ| > 0.1·γ_m·(γ_m/ω_m) only
// raises validity_warning.
SplittingResult splitting_near_ep(const OptomechParams& p, double delta,
                                  EpIndex which);

// Linear response far from the EPs: ±(ω_m + δ) below EP1, ±2(ω_m + δ)
// above EP2.
SplittingResult splitting_far(const OptomechParams& p, double delta,
                              FarRegime regime);

// Frequency shift caused by an adhering particle of mass m_p.
MassPerturbation mass_perturbation(const OptomechParams& p, double m_p);

// Splitting at Ω ≈ Ω_EP2 for particle mass m_p; resolvable iff
// m_p/m >= 1/(8Q_m²).
SplittingResult mass_splitting(const OptomechParams& p, double m_p);

// Smallest particle mass whose splitting clears the linewidth: m/(8Q_m²).
double min_resolvable_mass(const OptomechParams& p);

}  // namespace aptmech
