// sweep.hpp — grid evaluations over damping ratio, drive strength and
// frequency perturbation.
//
// Every point of a sweep is an independent pure-function evaluation, so the
// kernels come in two flavors selected by an Execution tag: a serial
// reference loop and an OpenMP parallel-for.  Results are written into
// preallocated slots indexed by grid position, so the two flavors produce
// bit-identical output; the serial loop is kept as the reference the tests
// compare against, and tools/bench_sweeps times one against the other.

#pragma once

#include <cstddef>
#include <vector>

#include "aptmech/dynamics.hpp"
#include "aptmech/optomech.hpp"
#include "aptmech/resonator.hpp"
#include "aptmech/sensing.hpp"

namespace aptmech {

enum class Execution { Serial, Parallel };

struct Grid {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
    bool log_scale = false;

    // Endpoint-exact point list (lerp form; log grids interpolate exponents).
    std::vector<double> points() const;
};

struct EigenSweepRow {
    double ratio = 0.0;  // γ_m/ω_m
    EigenSolution sol;
};

// Eigenstructure of the bare resonator over a γ_m/ω_m grid.
std::vector<EigenSweepRow> eigen_ratio_sweep(double omega_m,
                                             const std::vector<double>& ratios,
                                             Execution exec);

// Zero-crossing count of Q(t) from (Q0, P0) per damping ratio.  Step and
// horizon follow the slowest decay rate of each ratio so the count is
// converged in every regime.
std::vector<int> zero_crossing_sweep(double omega_m,
                                     const std::vector<double>& ratios,
                                     double Q0, double P0, Execution exec);

struct DriveSweepRow {
    double Omega = 0.0;
    SteadyStateSolution steady;
    DriveEigenvalues eigen;
};

// Steady-state branches and drive-dependent eigenvalues per drive strength.
std::vector<DriveSweepRow> drive_sweep(const OptomechParams& base,
                                       const std::vector<double>& omegas,
                                       Execution exec);

struct SensitivityRow {
    double Omega = 0.0;
    SensitivityResult analytic;
    double fd_plus = 0.0;   // central difference of the exact splitting
    bool in_ep_band = false;
};

// Analytic sensitivity next to its finite-difference oracle per drive point.
// fd_rel_step is the relative ω_m step of the central difference; points
// within ep_band_abs of either EP are flagged and left at zero.
std::vector<SensitivityRow> sensitivity_sweep(const OptomechParams& base,
                                              const std::vector<double>& omegas,
                                              double fd_rel_step,
                                              double ep_band_abs,
                                              Execution exec);

struct SplittingRow {
    double delta = 0.0;
    SplittingResult exact;
    SplittingResult near;
};

// Exact and near-EP splitting per frequency perturbation, with the drive
// pinned to the chosen EP.
std::vector<SplittingRow> splitting_delta_sweep(const OptomechParams& base,
                                                EpIndex which,
                                                const std::vector<double>& deltas,
                                                Execution exec);

}  // namespace aptmech
