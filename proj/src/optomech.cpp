#include "aptmech/optomech.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "aptmech/rootfind.hpp"

namespace aptmech {

namespace {

constexpr cplx kImag{0.0, 1.0};

// λ± = −iγ/2 ± i·sqrt((γ/2)² − ω_eff²), with the small purely imaginary root
// formed through the product identity λ+λ− = −ω_eff².  Valid for any real
// ω_eff² (negative values give the origin branch above threshold: one
// growing mode).
std::pair<cplx, cplx> lambda_from_omega_sq(double omega_eff_sq, double gamma) {
    const double hg = gamma / 2.0;
    const double disc = hg * hg - omega_eff_sq;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double big = hg + s;
        const cplx minus{0.0, -big};
        const cplx plus = (big > 0.0) ? cplx{0.0, -omega_eff_sq / big}
                                      : cplx{0.0, 0.0};
        return {plus, minus};
    }
    const double wd = std::sqrt(-disc);
    return {cplx{-wd, -hg}, cplx{wd, -hg}};
}

cplx alpha_at(const OptomechParams& p, double Q) {
    // α_s = −2iΩ / (γ_c + 4igQ²)
    return (-2.0 * kImag * p.Omega) /
           cplx{p.gamma_c, 4.0 * p.g * Q * Q};
}

}  // namespace

void validate(const OptomechParams& p) {
    validate(p.resonator);
    for (double v : {p.g, p.gamma_c, p.Omega, p.omega_c, p.omega_L})
        if (!std::isfinite(v))
            throw std::invalid_argument("OptomechParams: non-finite value");
    if (p.gamma_c <= 0.0)
        throw std::invalid_argument("OptomechParams: gamma_c must be > 0");
    if (p.Omega < 0.0)
        throw std::invalid_argument("OptomechParams: Omega must be >= 0");
    if (p.omega_L != p.omega_c)
        throw std::invalid_argument(
            "OptomechParams: drive must be resonant (omega_L == omega_c)");
}

bool adiabatic_regime_warning(const OptomechParams& p) {
    return p.gamma_c < 10.0 * p.resonator.omega_m;
}

const char* to_string(SteadyStateRegime regime) {
    switch (regime) {
        case SteadyStateRegime::SubCritical: return "sub_critical";
        case SteadyStateRegime::SuperCriticalSsb: return "super_critical_ssb";
        case SteadyStateRegime::PositiveCoupling: return "positive_coupling";
    }
    return "?";
}

double critical_drive(const OptomechParams& p) {
    validate(p);
    if (p.g >= 0.0)
        throw std::domain_error(
            "critical_drive: no symmetry-breaking transition for g >= 0");
    return std::sqrt(-p.gamma_c * p.gamma_c * p.resonator.omega_m /
                     (16.0 * p.g));
}

SteadyStateSolution steady_states(const OptomechParams& p) {
    validate(p);
    SteadyStateSolution sol;
    const cplx alpha0 = alpha_at(p, 0.0);

    if (p.g >= 0.0) {
        sol.regime = SteadyStateRegime::PositiveCoupling;
        sol.branches.push_back({0.0, 0.0, alpha0, true});
        return sol;
    }
    const double omega_c = critical_drive(p);
    if (p.Omega <= omega_c) {
        sol.regime = SteadyStateRegime::SubCritical;
        sol.branches.push_back({0.0, 0.0, alpha0, true});
        return sol;
    }
    sol.regime = SteadyStateRegime::SuperCriticalSsb;
    sol.branches.push_back({0.0, 0.0, alpha0, false});
    const double qs_sq = std::sqrt(-(p.Omega * p.Omega - omega_c * omega_c) /
                                   (p.g * p.resonator.omega_m));
    const double qs = std::sqrt(qs_sq);
    const cplx alpha_s = alpha_at(p, qs);
    sol.branches.push_back({qs, 0.0, alpha_s, true});
    sol.branches.push_back({-qs, 0.0, alpha_s, true});
    return sol;
}

double effective_potential(const OptomechParams& p, double Q) {
    return 0.5 * p.resonator.omega_m * Q * Q +
           (2.0 * p.Omega * p.Omega / p.gamma_c) *
               std::atan(4.0 * p.g * Q * Q / p.gamma_c);
}

SpringResult effective_spring_constant(const OptomechParams& p) {
    const double omega_c = critical_drive(p);
    const double k = p.resonator.spring_constant();
    const double r2 = (p.Omega / omega_c) * (p.Omega / omega_c);
    SpringResult out;
    if (p.Omega <= omega_c) {
        out.regime = DriveRegime::SubCritical;
        out.k_eff = k * (1.0 - r2);
    } else {
        out.regime = DriveRegime::SuperCritical;
        out.k_eff = 4.0 * k * (1.0 - 1.0 / r2);
    }
    out.omega_eff_sq = out.k_eff / p.resonator.mass;
    out.omega_eff = std::sqrt(std::max(0.0, out.omega_eff_sq));
    return out;
}

double origin_curvature_sq(const OptomechParams& p) {
    const double omega_c = critical_drive(p);
    const double w = p.resonator.omega_m;
    return w * w * (1.0 - (p.Omega / omega_c) * (p.Omega / omega_c));
}

DriveEigenvalues eigenvalues_vs_drive(const OptomechParams& p) {
    const SpringResult spring = effective_spring_constant(p);
    const double gm = p.resonator.gamma_m;
    DriveEigenvalues out;
    out.omega_eff_sq = spring.omega_eff_sq;
    out.regime = spring.regime;
    std::tie(out.lambda_plus, out.lambda_minus) =
        lambda_from_omega_sq(spring.omega_eff_sq, gm);
    if (spring.regime == DriveRegime::SuperCritical) {
        out.has_unstable_branch = true;
        out.omega_eff_sq_origin = origin_curvature_sq(p);
        std::tie(out.unstable_lambda_plus, out.unstable_lambda_minus) =
            lambda_from_omega_sq(out.omega_eff_sq_origin, gm);
    }
    return out;
}

EpResult locate_eps(const OptomechParams& p) {
    const double omega_c = critical_drive(p);
    const double w = p.resonator.omega_m, gm = p.resonator.gamma_m;
    if (gm >= 2.0 * w)
        throw std::domain_error(
            "locate_eps: resonator already over-damped, no EP pair");

    EpResult out;
    out.omega_c = omega_c;
    const double half_ratio = gm / (2.0 * w);      // γ/(2ω)
    const double quarter_ratio = gm / (4.0 * w);   // γ/(4ω)
    out.omega_ep1 = omega_c * std::sqrt(1.0 - half_ratio * half_ratio);
    out.omega_ep2 =
        omega_c / std::sqrt(1.0 - quarter_ratio * quarter_ratio);
    out.omega_ep2_printed_eq9 =
        omega_c / std::sqrt(1.0 - half_ratio * half_ratio);

    // Independent confirmation: bisection on the eigenvalue discriminants
    // (γ/2)² − ω_eff²(Ω) of the two regimes.
    const double hg2 = (gm / 2.0) * (gm / 2.0);
    auto disc_sub = [&](double om) {
        const double r2 = (om / omega_c) * (om / omega_c);
        return hg2 - w * w * (1.0 - r2);
    };
    auto disc_super = [&](double om) {
        const double r2 = (om / omega_c) * (om / omega_c);
        return hg2 - 4.0 * w * w * (1.0 - 1.0 / r2);
    };
    // disc_super(omega_c) = (γ/2)² > 0, so omega_c itself brackets EP2 from
    // below even when the lossless limit pushes EP2 within rounding of it.
    out.omega_ep1_bisect = bisect(disc_sub, 0.0, omega_c);
    out.omega_ep2_bisect = bisect(disc_super, omega_c, 4.0 * omega_c);
    return out;
}

double ssb_retardation_antidamping(const OptomechParams& p) {
    const double omega_c = critical_drive(p);
    if (p.Omega <= omega_c)
        throw std::domain_error(
            "ssb_retardation_antidamping: requires Omega > Omega_c");

    // Expand the field response about the displaced equilibrium to first
    // order in d/dt: δα(s) = (sI − B)⁻¹ v δQ ≈ (−B⁻¹ − sB⁻²) v δQ, so the
    // force row w picks up the velocity coefficient −wᵀB⁻²v.
    const double qs_sq = std::sqrt(-(p.Omega * p.Omega - omega_c * omega_c) /
                                   (p.g * p.resonator.omega_m));
    const double qs = std::sqrt(qs_sq);
    const cplx alpha = alpha_at(p, qs);
    const double x = alpha.real(), y = alpha.imag();
    const double hc = p.gamma_c / 2.0;
    const double shift = 2.0 * p.g * qs_sq;

    const double b00 = -hc, b01 = shift, b10 = -shift, b11 = -hc;
    const double v0 = 4.0 * p.g * qs * y, v1 = -4.0 * p.g * qs * x;
    const double w0 = -8.0 * p.g * x * qs, w1 = -8.0 * p.g * y * qs;

    // z = B⁻²v via two 2x2 solves.
    const double det = b00 * b11 - b01 * b10;
    auto solve = [&](double r0, double r1, double& s0, double& s1) {
        s0 = (b11 * r0 - b01 * r1) / det;
        s1 = (b00 * r1 - b10 * r0) / det;
    };
    double u0, u1, z0, z1;
    solve(v0, v1, u0, u1);
    solve(u0, u1, z0, z1);
    return -(w0 * z0 + w1 * z1);
}

}  // namespace aptmech
