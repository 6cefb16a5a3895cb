// dynamics.hpp — time-domain integration of the mean-value equations.
//
// Two systems are integrated with the same fixed-step 4th-order Runge–Kutta
// scheme:
//
//   bare resonator      dQ/dt = ω_m P
//                       dP/dt = −ω_m Q − γ_m P
//
//   driven cavity +     dα/dt = −(γ_c/2)α − i·2g·Q²·α − iΩ
//   resonator           dQ/dt = ω_m P
//                       dP/dt = −ω_m Q − 4g|α|²Q − γ_m P
//
// The complex cavity amplitude α is carried as two real components so the
// integrator state stays real.  The bare system also has the exact solution
// (matrix exponential of the 2x2 real system) used as the integration oracle,
// valid in all three damping regimes including the degenerate critical one.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "aptmech/optomech.hpp"
#include "aptmech/resonator.hpp"

namespace aptmech {

// Raised when an integration produces a non-finite state.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrajectorySample {
    double t = 0.0;
    double Q = 0.0;
    double P = 0.0;
    double alpha_re = 0.0;  // zero for bare-resonator runs
    double alpha_im = 0.0;
};

using Trajectory = std::vector<TrajectorySample>;

enum class StateComponent { Displacement, Momentum, AlphaRe, AlphaIm };

// Fixed-step RK4 configuration.  The step must satisfy
// step · max(ω_m, γ_m, γ_c/2, |optical spring rate|) < 0.1; the bound is
// enforced when a simulation is set up, since only there are the rates known.
struct IntegratorConfig {
    double step = 1e-3;
    double t_end = 20.0;
    std::size_t record_stride = 1;  // keep every n-th step (plus endpoints)
};

void validate(const IntegratorConfig& cfg);

struct OptomechState {
    double Q = 0.0;
    double P = 0.0;
    double alpha_re = 0.0;
    double alpha_im = 0.0;
};

// RK4 trajectory of the bare resonator from (Q0, P0).
// Throws std::invalid_argument if the step bound is violated and NumericError
// (with time and state in the message) if the state leaves the finite range.
Trajectory simulate_resonator(const ResonatorParams& p, double Q0, double P0,
                              const IntegratorConfig& cfg);

// Exact damped-oscillator solution at time t >= 0; returns (Q, P).
std::array<double, 2> analytic_resonator_solution(const ResonatorParams& p,
                                                  double Q0, double P0,
                                                  double t);

// RK4 trajectory of the full mean-field system from the given state.
Trajectory simulate_optomech(const OptomechParams& p, const OptomechState& s0,
                             const IntegratorConfig& cfg);

// Right-hand side of the mean-field system; exposed so fixed points returned
// by the steady-state analysis can be checked for zero residual.
OptomechState optomech_rhs(const OptomechParams& p, const OptomechState& s);

// Max-abs residual of the mean-field right-hand side at a candidate fixed
// point (Q_s, P_s, α_s).
double fixed_point_residual(const OptomechParams& p, double Q_s, double P_s,
                            cplx alpha_s);

// Number of strict sign changes of the selected component along a trajectory
// (zero samples are skipped, a sign flip across them counts once).
int count_zero_crossings(const Trajectory& traj, StateComponent component);

// 4x4 Jacobian of the mean-field system at a phase-space point, state order
// (Q, P, Re α, Im α).
std::array<std::array<double, 4>, 4> optomech_jacobian(const OptomechParams& p,
                                                       const OptomechState& s);

// All four eigenvalues of the 4x4 Jacobian, via its characteristic polynomial
// (Faddeev–LeVerrier) and a deterministic Durand–Kerner iteration.  Sorted by
// descending real part, then descending imaginary part.  This is a
// diagnostics helper: the 2x2 closed forms remain the analysis contract.
std::array<cplx, 4> jacobian_spectrum(
    const std::array<std::array<double, 4>, 4>& jac);

}  // namespace aptmech
