#include "aptmech/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aptmech {

namespace {

template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y,
                               double h) {
    const auto k1 = f(y);
    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = f(tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    const auto k4 = f(tmp);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

template <std::size_t N>
bool all_finite(const std::array<double, N>& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

void check_step_bound(const IntegratorConfig& cfg, double max_rate,
                      const char* what) {
    if (cfg.step * max_rate >= 0.1) {
        std::ostringstream os;
        os << what << ": step " << cfg.step
           << " violates the stability bound step < 0.1/max_rate with max_rate "
           << max_rate;
        throw std::invalid_argument(os.str());
    }
}

template <std::size_t N>
[[noreturn]] void raise_nonfinite(const char* what, double t,
                                  const std::array<double, N>& y) {
    std::ostringstream os;
    os << what << ": non-finite state at t = " << t << " [";
    for (std::size_t i = 0; i < N; ++i) os << (i ? ", " : "") << y[i];
    os << "]";
    throw NumericError(os.str());
}

// Shared integration loop: records every record_stride-th step plus the
// initial and final states.
template <std::size_t N, class F, class MakeSample>
Trajectory integrate(F&& rhs, const std::array<double, N>& y0,
                     const IntegratorConfig& cfg, MakeSample&& make_sample,
                     const char* what) {
    const auto n_steps = static_cast<std::size_t>(std::ceil(
        cfg.t_end / cfg.step - 1e-12));
    Trajectory traj;
    traj.reserve(n_steps / cfg.record_stride + 2);
    std::array<double, N> y = y0;
    traj.push_back(make_sample(0.0, y));
    for (std::size_t k = 0; k < n_steps; ++k) {
        y = rk4_step<N>(rhs, y, cfg.step);
        const double t = static_cast<double>(k + 1) * cfg.step;
        if (!all_finite(y)) raise_nonfinite<N>(what, t, y);
        if ((k + 1) % cfg.record_stride == 0 || k + 1 == n_steps)
            traj.push_back(make_sample(t, y));
    }
    return traj;
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
    if (!(std::isfinite(cfg.step) && cfg.step > 0.0))
        throw std::invalid_argument("IntegratorConfig: step must be > 0");
    if (!(std::isfinite(cfg.t_end) && cfg.t_end > cfg.step))
        throw std::invalid_argument("IntegratorConfig: t_end must exceed step");
    if (cfg.record_stride == 0)
        throw std::invalid_argument("IntegratorConfig: record_stride must be >= 1");
}

Trajectory simulate_resonator(const ResonatorParams& p, double Q0, double P0,
                              const IntegratorConfig& cfg) {
    validate(p);
    validate(cfg);
    if (!std::isfinite(Q0) || !std::isfinite(P0))
        throw std::invalid_argument("simulate_resonator: non-finite initial state");
    check_step_bound(cfg, std::max(p.omega_m, p.gamma_m), "simulate_resonator");

    const double w = p.omega_m, g = p.gamma_m;
    auto rhs = [w, g](const std::array<double, 2>& y) {
        return std::array<double, 2>{w * y[1], -w * y[0] - g * y[1]};
    };
    auto sample = [](double t, const std::array<double, 2>& y) {
        return TrajectorySample{t, y[0], y[1], 0.0, 0.0};
    };
    return integrate<2>(rhs, {Q0, P0}, cfg, sample, "simulate_resonator");
}

std::array<double, 2> analytic_resonator_solution(const ResonatorParams& p,
                                                  double Q0, double P0,
                                                  double t) {
    validate(p);
    if (!(t >= 0.0)) throw std::invalid_argument("analytic solution: t must be >= 0");

    // exp(Mt) with M = [[0, ω], [−ω, −γ]]:
    //   exp(Mt) = e^{−γt/2} [C·I + S·(M + (γ/2)I)]
    // where a = γ²/4 − ω², C = cosh(√a t), S = sinh(√a t)/√a; trigonometric
    // for a < 0, and C = 1, S = t in the degenerate a = 0 case.
    const double w = p.omega_m, hg = p.gamma_m / 2.0;
    const double a = hg * hg - w * w;
    double C, S;
    if (a > 0.0) {
        const double mu = std::sqrt(a);
        C = std::cosh(mu * t);
        S = std::sinh(mu * t) / mu;
    } else if (a < 0.0) {
        const double nu = std::sqrt(-a);
        C = std::cos(nu * t);
        S = std::sin(nu * t) / nu;
    } else {
        C = 1.0;
        S = t;
    }
    const double e = std::exp(-hg * t);
    return {e * (C * Q0 + S * (hg * Q0 + w * P0)),
            e * (C * P0 + S * (-w * Q0 - hg * P0))};
}

OptomechState optomech_rhs(const OptomechParams& p, const OptomechState& s) {
    const double w = p.resonator.omega_m, gm = p.resonator.gamma_m;
    const double hc = p.gamma_c / 2.0, g = p.g, Om = p.Omega;
    const double shift = 2.0 * g * s.Q * s.Q;  // cavity pull, rad/s
    const double n = s.alpha_re * s.alpha_re + s.alpha_im * s.alpha_im;
    OptomechState d;
    d.Q = w * s.P;
    d.P = -w * s.Q - 4.0 * g * n * s.Q - gm * s.P;
    d.alpha_re = -hc * s.alpha_re + shift * s.alpha_im;
    d.alpha_im = -hc * s.alpha_im - shift * s.alpha_re - Om;
    return d;
}

double fixed_point_residual(const OptomechParams& p, double Q_s, double P_s,
                            cplx alpha_s) {
    const OptomechState s{Q_s, P_s, alpha_s.real(), alpha_s.imag()};
    const OptomechState d = optomech_rhs(p, s);
    return std::max(std::max(std::abs(d.Q), std::abs(d.P)),
                    std::max(std::abs(d.alpha_re), std::abs(d.alpha_im)));
}

Trajectory simulate_optomech(const OptomechParams& p, const OptomechState& s0,
                             const IntegratorConfig& cfg) {
    validate(p);
    validate(cfg);
    for (double v : {s0.Q, s0.P, s0.alpha_re, s0.alpha_im})
        if (!std::isfinite(v))
            throw std::invalid_argument("simulate_optomech: non-finite initial state");

    // A priori field bound for the spring-rate estimate: the drive cannot
    // push |α| beyond ~2Ω/γ_c once transients decay.
    const double alpha0 = std::hypot(s0.alpha_re, s0.alpha_im);
    const double alpha_bound = std::max(alpha0, 2.0 * p.Omega / p.gamma_c);
    const double spring_rate = 4.0 * std::abs(p.g) * alpha_bound * alpha_bound;
    const double max_rate =
        std::max({p.resonator.omega_m, p.resonator.gamma_m, p.gamma_c / 2.0,
                  spring_rate});
    check_step_bound(cfg, max_rate, "simulate_optomech");

    auto rhs = [&p](const std::array<double, 4>& y) {
        const OptomechState s{y[0], y[1], y[2], y[3]};
        const OptomechState d = optomech_rhs(p, s);
        return std::array<double, 4>{d.Q, d.P, d.alpha_re, d.alpha_im};
    };
    auto sample = [](double t, const std::array<double, 4>& y) {
        return TrajectorySample{t, y[0], y[1], y[2], y[3]};
    };
    return integrate<4>(rhs, {s0.Q, s0.P, s0.alpha_re, s0.alpha_im}, cfg,
                        sample, "simulate_optomech");
}

int count_zero_crossings(const Trajectory& traj, StateComponent component) {
    if (traj.empty())
        throw std::invalid_argument("count_zero_crossings: empty trajectory");
    auto pick = [component](const TrajectorySample& s) {
        switch (component) {
            case StateComponent::Displacement: return s.Q;
            case StateComponent::Momentum: return s.P;
            case StateComponent::AlphaRe: return s.alpha_re;
            case StateComponent::AlphaIm: return s.alpha_im;
        }
        return s.Q;
    };
    int crossings = 0;
    int last_sign = 0;
    for (const auto& s : traj) {
        const double v = pick(s);
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++crossings;
        last_sign = sign;
    }
    return crossings;
}

std::array<std::array<double, 4>, 4> optomech_jacobian(const OptomechParams& p,
                                                       const OptomechState& s) {
    const double w = p.resonator.omega_m, gm = p.resonator.gamma_m;
    const double hc = p.gamma_c / 2.0, g = p.g;
    const double x = s.alpha_re, y = s.alpha_im, Q = s.Q;
    const double n = x * x + y * y;
    // State order (Q, P, Re α, Im α).
    std::array<std::array<double, 4>, 4> j{};
    j[0] = {0.0, w, 0.0, 0.0};
    j[1] = {-w - 4.0 * g * n, -gm, -8.0 * g * x * Q, -8.0 * g * y * Q};
    j[2] = {4.0 * g * Q * y, 0.0, -hc, 2.0 * g * Q * Q};
    j[3] = {-4.0 * g * Q * x, 0.0, -2.0 * g * Q * Q, -hc};
    return j;
}

std::array<cplx, 4> jacobian_spectrum(
    const std::array<std::array<double, 4>, 4>& jac) {
    // Characteristic polynomial λ⁴ + c3λ³ + c2λ² + c1λ + c0 by
    // Faddeev–LeVerrier.
    using Mat = std::array<std::array<double, 4>, 4>;
    auto mul = [](const Mat& a, const Mat& b) {
        Mat r{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
        return r;
    };
    auto tr = [](const Mat& a) {
        return a[0][0] + a[1][1] + a[2][2] + a[3][3];
    };
    Mat m = jac;
    std::array<double, 4> c{};  // c[k] multiplies λ^k; leading coeff is 1
    double cn = -tr(m);         // c3
    c[3] = cn;
    for (int k = 2; k >= 0; --k) {
        Mat shifted = m;
        for (int i = 0; i < 4; ++i) shifted[i][i] += cn;
        m = mul(jac, shifted);
        cn = -tr(m) / static_cast<double>(4 - k);
        c[k] = cn;
    }

    auto poly = [&c](cplx z) {
        return (((z + c[3]) * z + c[2]) * z + c[1]) * z + c[0];
    };

    // Durand–Kerner with the conventional deterministic seeds.
    double scale = 1.0;
    for (double ck : c) scale = std::max(scale, std::abs(ck));
    std::array<cplx, 4> r;
    const cplx seed{0.4, 0.9};
    cplx s = seed;
    for (auto& ri : r) {
        ri = s * std::cbrt(scale);
        s *= seed;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double move = 0.0;
        for (int i = 0; i < 4; ++i) {
            cplx denom{1.0, 0.0};
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= r[i] - r[j];
            const cplx delta = poly(r[i]) / denom;
            r[i] -= delta;
            move = std::max(move, std::abs(delta));
        }
        if (move < 1e-14 * std::cbrt(scale)) break;
    }
    std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return r;
}

}  // namespace aptmech
