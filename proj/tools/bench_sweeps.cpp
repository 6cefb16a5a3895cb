// bench_sweeps — wall-clock comparison of the serial reference loops against
// the OpenMP kernels.  Prints one row per kernel with both times and the
// speedup; the checksum column guards against the work being optimized away
// (and must match between the two flavors).

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aptmech/sweep.hpp"

using namespace aptmech;

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms,
            double check_serial, double check_parallel) {
    std::printf("%-22s %10.1f ms %10.1f ms %7.2fx   checksum %.6e%s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, check_serial,
                check_serial == check_parallel ? "" : "  MISMATCH");
}

OptomechParams desk_params() {
    OptomechParams p;
    p.resonator = {1.0, 0.01, 3.6e-15};
    p.gamma_c = 50.0;
    p.g = -0.01;
    return p;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    {
        const auto ratios = Grid{1e-3, 1e3, 200000, true}.points();
        std::vector<EigenSweepRow> rows_s, rows_p;
        const double ts = time_ms(
            [&] { rows_s = eigen_ratio_sweep(1.0, ratios, Execution::Serial); });
        const double tp = time_ms([&] {
            rows_p = eigen_ratio_sweep(1.0, ratios, Execution::Parallel);
        });
        double cs = 0.0, cp = 0.0;
        for (const auto& r : rows_s) cs += r.sol.lambda_plus.imag();
        for (const auto& r : rows_p) cp += r.sol.lambda_plus.imag();
        report("eigen_ratio_sweep", ts, tp, cs, cp);
    }

    {
        const auto ratios = Grid{0.1, 10.0, 96, false}.points();
        std::vector<int> c_s, c_p;
        const double ts = time_ms([&] {
            c_s = zero_crossing_sweep(1.0, ratios, 1.0, 0.0, Execution::Serial);
        });
        const double tp = time_ms([&] {
            c_p = zero_crossing_sweep(1.0, ratios, 1.0, 0.0,
                                      Execution::Parallel);
        });
        double cs = 0.0, cp = 0.0;
        for (int c : c_s) cs += c;
        for (int c : c_p) cp += c;
        report("zero_crossing_sweep", ts, tp, cs, cp);
    }

    {
        const OptomechParams p = desk_params();
        const double omega_c = critical_drive(p);
        auto omegas = Grid{0.0, 2.0, 200000, false}.points();
        for (double& v : omegas) v *= omega_c;
        std::vector<DriveSweepRow> rows_s, rows_p;
        const double ts = time_ms(
            [&] { rows_s = drive_sweep(p, omegas, Execution::Serial); });
        const double tp = time_ms(
            [&] { rows_p = drive_sweep(p, omegas, Execution::Parallel); });
        double cs = 0.0, cp = 0.0;
        for (const auto& r : rows_s) cs += r.steady.branches.back().Q_s;
        for (const auto& r : rows_p) cp += r.steady.branches.back().Q_s;
        report("drive_sweep", ts, tp, cs, cp);
    }

    {
        const OptomechParams p = desk_params();
        const double omega_c = critical_drive(p);
        auto omegas = Grid{0.02, 2.0, 100000, false}.points();
        for (double& v : omegas) v *= omega_c;
        std::vector<SensitivityRow> rows_s, rows_p;
        const double ts = time_ms([&] {
            rows_s = sensitivity_sweep(p, omegas, 1e-6, 1e-9 * omega_c,
                                       Execution::Serial);
        });
        const double tp = time_ms([&] {
            rows_p = sensitivity_sweep(p, omegas, 1e-6, 1e-9 * omega_c,
                                       Execution::Parallel);
        });
        double cs = 0.0, cp = 0.0;
        for (const auto& r : rows_s) cs += r.fd_plus;
        for (const auto& r : rows_p) cp += r.fd_plus;
        report("sensitivity_sweep", ts, tp, cs, cp);
    }

    return 0;
}
