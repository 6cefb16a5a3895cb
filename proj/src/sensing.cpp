#include "aptmech/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace aptmech {

namespace {

SplittingResult from_discriminant(double disc, double gamma_m) {
    // disc = (γ/2)² − ω_eff²: negative in the broken phase (real splitting),
    // positive in the unbroken phase (decay-rate splitting only).
    SplittingResult out;
    if (disc < 0.0) {
        out.omega_plus = std::sqrt(-disc);
        out.omega_minus = -out.omega_plus;
    } else {
        out.decay_splitting = 2.0 * std::sqrt(disc);
    }
    out.resolvable = 2.0 * out.omega_plus > gamma_m;
    return out;
}

}  // namespace

SplittingResult splitting_exact(const OptomechParams& p, double delta) {
    validate(p);
    if (p.g >= 0.0)
        throw std::domain_error("splitting_exact: requires g < 0");
    const double w = p.resonator.omega_m + delta;
    if (!(w > 0.0))
        throw std::invalid_argument(
            "splitting_exact: perturbed frequency must stay positive");
    const double gm = p.resonator.gamma_m;
    // Ω_c² = c·ω with c = −γ_c²/(16g) fixed by the cavity and the coupling.
    const double c = -p.gamma_c * p.gamma_c / (16.0 * p.g);
    const double omega_c_sq = c * w;
    const double om_sq = p.Omega * p.Omega;
    double omega_eff_sq;
    if (om_sq <= omega_c_sq) {
        omega_eff_sq = w * w * (1.0 - om_sq / omega_c_sq);
    } else {
        omega_eff_sq = 4.0 * w * w * (1.0 - omega_c_sq / om_sq);
    }
    const double hg = gm / 2.0;
    return from_discriminant(hg * hg - omega_eff_sq, gm);
}

SensitivityResult sensitivity_analytic(const OptomechParams& p) {
    const EpResult eps = locate_eps(p);
    SensitivityResult out;
    if (p.Omega > eps.omega_ep1 && p.Omega < eps.omega_ep2) {
        out.regime = 0;  // splitting pinned at zero between the EPs
        return out;
    }
    const double w = p.resonator.omega_m;
    const double split = splitting_exact(p, 0.0).omega_plus;
    if (split <= 0.0) {
        out.diverged = true;
        out.regime = (p.Omega <= eps.omega_ep1) ? -1 : 1;
        return out;
    }
    const double r2 = (p.Omega / eps.omega_c) * (p.Omega / eps.omega_c);
    if (p.Omega <= eps.omega_ep1) {
        out.regime = -1;
        out.plus = (w / split) * (1.0 - 0.5 * r2);
    } else {
        out.regime = 1;
        out.plus = (4.0 * w / split) * (1.0 - 1.5 / r2);
    }
    out.minus = -out.plus;
    return out;
}

SplittingResult splitting_near_ep(const OptomechParams& p, double delta,
                                  EpIndex which) {
    validate(p);
    if (p.g >= 0.0)
        throw std::domain_error("splitting_near_ep: requires g < 0");
    const double w = p.resonator.omega_m, gm = p.resonator.gamma_m;
    SplittingResult out;
    if (gm > 0.0 && std::abs(delta) > 0.1 * gm * (gm / w))
        out.validity_warning = true;

    const double opening = (which == EpIndex::Ep1) ? delta : -delta;
    if (opening < 0.0) {
        out.wrong_sign_delta = true;  // splitting stays imaginary: report 0
        return out;
    }
    const double base = std::sqrt(w * opening);
    out.omega_plus = (which == EpIndex::Ep1) ? base : 2.0 * base;
    out.omega_minus = -out.omega_plus;
    out.resolvable = 2.0 * out.omega_plus > gm;
    return out;
}

SplittingResult splitting_far(const OptomechParams& p, double delta,
                              FarRegime regime) {
    validate(p);
    const double w = p.resonator.omega_m + delta;
    const double factor = (regime == FarRegime::BelowEp1) ? 1.0 : 2.0;
    SplittingResult out;
    out.omega_plus = factor * std::abs(w);
    out.omega_minus = -out.omega_plus;
    out.resolvable = 2.0 * out.omega_plus > p.resonator.gamma_m;
    return out;
}

MassPerturbation mass_perturbation(const OptomechParams& p, double m_p) {
    validate(p);
    if (!(m_p >= 0.0) || !std::isfinite(m_p))
        throw std::invalid_argument("mass_perturbation: m_p must be >= 0");
    return {m_p, -0.5 * p.resonator.omega_m * (m_p / p.resonator.mass)};
}

SplittingResult mass_splitting(const OptomechParams& p, double m_p) {
    validate(p);
    if (!(m_p >= 0.0) || !std::isfinite(m_p))
        throw std::invalid_argument("mass_splitting: m_p must be >= 0");
    if (p.resonator.gamma_m <= 0.0)
        throw std::domain_error("mass_splitting: requires gamma_m > 0");
    const double ratio = m_p / p.resonator.mass;
    SplittingResult out;
    out.omega_plus = std::sqrt(2.0) * p.resonator.omega_m * std::sqrt(ratio);
    out.omega_minus = -out.omega_plus;
    const double q = p.resonator.quality_factor();
    out.resolvable = ratio >= 1.0 / (8.0 * q * q);
    return out;
}

double min_resolvable_mass(const OptomechParams& p) {
    validate(p);
    if (p.resonator.gamma_m <= 0.0)
        throw std::domain_error("min_resolvable_mass: requires gamma_m > 0");
    const double q = p.resonator.quality_factor();
    return p.resonator.mass / (8.0 * q * q);
}

}  // namespace aptmech
