#include "aptmech/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace aptmech {

namespace {

// One loop body shape for both execution flavors.  Writes go to disjoint
// preallocated slots, so the parallel result is bit-identical to the serial
// one.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& body) {
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace

std::vector<double> Grid::points() const {
    if (count < 1) throw std::invalid_argument("Grid: count must be >= 1");
    if (log_scale && !(start > 0.0 && stop > 0.0))
        throw std::invalid_argument("Grid: log scale needs positive endpoints");
    std::vector<double> pts(count);
    if (count == 1) {
        pts[0] = start;
        return pts;
    }
    const double a = log_scale ? std::log(start) : start;
    const double b = log_scale ? std::log(stop) : stop;
    const double n1 = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = static_cast<double>(i) / n1;
        const double v = a * (1.0 - u) + b * u;
        pts[i] = log_scale ? std::exp(v) : v;
    }
    // interpolation can round the endpoints; pin them
    pts[0] = start;
    pts[count - 1] = stop;
    return pts;
}

std::vector<EigenSweepRow> eigen_ratio_sweep(double omega_m,
                                             const std::vector<double>& ratios,
                                             Execution exec) {
    std::vector<EigenSweepRow> rows(ratios.size());
    for_each_index(ratios.size(), exec, [&](std::size_t i) {
        const double ratio = ratios[i];
        rows[i].ratio = ratio;
        rows[i].sol = eigen_analytic({omega_m, ratio * omega_m, 1.0});
    });
    return rows;
}

std::vector<int> zero_crossing_sweep(double omega_m,
                                     const std::vector<double>& ratios,
                                     double Q0, double P0, Execution exec) {
    std::vector<int> counts(ratios.size(), 0);
    for_each_index(ratios.size(), exec, [&](std::size_t i) {
        const double gamma_m = ratios[i] * omega_m;
        // Slowest decay: γ/2 below the critical ratio, the slow branch
        // γ/2 − sqrt(γ²/4 − ω²) above it.
        double slow = gamma_m / 2.0;
        const double disc = slow * slow - omega_m * omega_m;
        if (disc > 0.0) slow -= std::sqrt(disc);
        IntegratorConfig cfg;
        cfg.step = 0.05 / std::max(omega_m, gamma_m);
        cfg.t_end = (slow > 0.0) ? 20.0 / slow : 40.0 * M_PI / omega_m;
        cfg.record_stride = 1;
        const Trajectory traj =
            simulate_resonator({omega_m, gamma_m, 1.0}, Q0, P0, cfg);
        counts[i] = count_zero_crossings(traj, StateComponent::Displacement);
    });
    return counts;
}

std::vector<DriveSweepRow> drive_sweep(const OptomechParams& base,
                                       const std::vector<double>& omegas,
                                       Execution exec) {
    std::vector<DriveSweepRow> rows(omegas.size());
    for_each_index(omegas.size(), exec, [&](std::size_t i) {
        OptomechParams p = base;
        p.Omega = omegas[i];
        rows[i].Omega = omegas[i];
        rows[i].steady = steady_states(p);
        rows[i].eigen = eigenvalues_vs_drive(p);
    });
    return rows;
}

std::vector<SensitivityRow> sensitivity_sweep(const OptomechParams& base,
                                              const std::vector<double>& omegas,
                                              double fd_rel_step,
                                              double ep_band_abs,
                                              Execution exec) {
    const EpResult eps = locate_eps(base);
    std::vector<SensitivityRow> rows(omegas.size());
    for_each_index(omegas.size(), exec, [&](std::size_t i) {
        OptomechParams p = base;
        p.Omega = omegas[i];
        SensitivityRow& row = rows[i];
        row.Omega = omegas[i];
        row.in_ep_band = std::abs(p.Omega - eps.omega_ep1) < ep_band_abs ||
                         std::abs(p.Omega - eps.omega_ep2) < ep_band_abs;
        if (row.in_ep_band) return;
        row.analytic = sensitivity_analytic(p);
        const double h = fd_rel_step * p.resonator.omega_m;
        row.fd_plus = (splitting_exact(p, h).omega_plus -
                       splitting_exact(p, -h).omega_plus) /
                      (2.0 * h);
    });
    return rows;
}

std::vector<SplittingRow> splitting_delta_sweep(const OptomechParams& base,
                                                EpIndex which,
                                                const std::vector<double>& deltas,
                                                Execution exec) {
    const EpResult eps = locate_eps(base);
    OptomechParams p = base;
    p.Omega = (which == EpIndex::Ep1) ? eps.omega_ep1 : eps.omega_ep2;
    std::vector<SplittingRow> rows(deltas.size());
    for_each_index(deltas.size(), exec, [&](std::size_t i) {
        rows[i].delta = deltas[i];
        rows[i].exact = splitting_exact(p, deltas[i]);
        rows[i].near = splitting_near_ep(p, deltas[i], which);
    });
    return rows;
}

}  // namespace aptmech
