#include "aptmech/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aptmech {

namespace {

constexpr cplx kImag{0.0, 1.0};

// Exact sum of products via fma-based TwoProd and Neumaier compensation.
// Used for the 2x2 complex determinant, where the naive evaluation loses all
// significant bits once γ_m/ω_m is far from 1.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void add_product(double a, double b) {
        double p = a * b;
        double e = std::fma(a, b, -p);
        add(p);
        add(e);
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

cplx determinant_compensated(const EffectiveHamiltonian& h) {
    const cplx a = h.m[0][0], b = h.m[0][1], c = h.m[1][0], d = h.m[1][1];
    CompensatedSum re, im;
    re.add_product(a.real(), d.real());
    re.add_product(-a.imag(), d.imag());
    re.add_product(-b.real(), c.real());
    re.add_product(b.imag(), c.imag());
    im.add_product(a.real(), d.imag());
    im.add_product(a.imag(), d.real());
    im.add_product(-b.real(), c.imag());
    im.add_product(-b.imag(), c.real());
    return {re.value(), im.value()};
}

// Unit-norm eigenvector with the convention that the second component is
// real and non-negative (falls back to a real non-negative first component
// when the second vanishes, e.g. the lossless λ = +ω mode).
std::array<cplx, 2> normalize_vector(cplx v0, cplx v1) {
    double n = std::sqrt(std::norm(v0) + std::norm(v1));
    if (n == 0.0) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    v0 /= n;
    v1 /= n;
    cplx anchor = (std::abs(v1) > 0.0) ? v1 : v0;
    cplx rot = std::conj(anchor) / std::abs(anchor);
    return {v0 * rot, v1 * rot};
}

std::array<cplx, 2> vector_from_ratio_stable(cplx num, cplx den) {
    // (num/den, 1) scaled to (num, den): finite even when den == 0.
    return normalize_vector(num, den);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const ResonatorParams& p) {
    if (!finite(p.omega_m) || !finite(p.gamma_m) || !finite(p.mass))
        throw std::invalid_argument("ResonatorParams: non-finite value");
    if (p.omega_m <= 0.0)
        throw std::invalid_argument("ResonatorParams: omega_m must be > 0");
    if (p.gamma_m < 0.0)
        throw std::invalid_argument("ResonatorParams: gamma_m must be >= 0");
    if (p.mass <= 0.0)
        throw std::invalid_argument("ResonatorParams: mass must be > 0");
}

double EffectiveHamiltonian::max_abs() const {
    double v = 0.0;
    for (const auto& row : m)
        for (const auto& e : row) v = std::max(v, std::abs(e));
    return v;
}

const char* to_string(DampingPhase phase) {
    switch (phase) {
        case DampingPhase::UnderDampingAptBroken: return "under_damping_apt_broken";
        case DampingPhase::CriticalDampingEp: return "critical_damping_ep";
        case DampingPhase::OverDampingAptSymmetric: return "over_damping_apt_symmetric";
    }
    return "?";
}

DampingPhase classify_phase(double omega_m, double gamma_m) {
    const double r = gamma_m / (2.0 * omega_m);
    if (std::abs(r - 1.0) < kEpBand) return DampingPhase::CriticalDampingEp;
    return r < 1.0 ? DampingPhase::UnderDampingAptBroken
                   : DampingPhase::OverDampingAptSymmetric;
}

EffectiveHamiltonian build_hamiltonian(const ResonatorParams& p) {
    validate(p);
    const double hg = p.gamma_m / 2.0;
    EffectiveHamiltonian h;
    h.m[0][0] = {p.omega_m, -hg};
    h.m[0][1] = {0.0, hg};
    h.m[1][0] = {0.0, hg};
    h.m[1][1] = {-p.omega_m, -hg};
    return h;
}

double check_anti_pt(const EffectiveHamiltonian& h) {
    // (σ_x M σ_x)[i][j] = M[1-i][1-j]
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r = std::max(r, std::abs(std::conj(h.m[1 - i][1 - j]) + h.m[i][j]));
    return r;
}

EigenSolution eigen_analytic(const ResonatorParams& p) {
    validate(p);
    const double w = p.omega_m;
    const double hg = p.gamma_m / 2.0;
    const double disc = hg * hg - w * w;  // (γ/2)² − ω²

    EigenSolution sol;
    sol.phase = classify_phase(w, p.gamma_m);
    sol.degenerate = (sol.phase == DampingPhase::CriticalDampingEp);

    if (disc >= 0.0) {
        // Unbroken (or EP) side: both eigenvalues purely imaginary.  The slow
        // root is formed as ω²/(γ/2 + s) to dodge the γ/2 − s cancellation,
        // which keeps λ+·λ− = −ω² exact to rounding.
        const double s = std::sqrt(disc);
        const double big = hg + s;
        sol.lambda_minus = {0.0, -big};
        sol.lambda_plus = {0.0, -(w * w) / big};
        const double x = w / hg;  // = 2ω/γ, in (0, 1] here
        const double rs = std::sqrt(std::max(0.0, 1.0 - x * x));
        sol.ratio_plus = {rs, -x};
        sol.ratio_minus = {-rs, -x};
        sol.vec_plus = vector_from_ratio_stable(sol.ratio_plus, 1.0);
        sol.vec_minus = vector_from_ratio_stable(sol.ratio_minus, 1.0);
    } else {
        // Broken side: conjugate pair about −iγ/2.
        const double wd = std::sqrt(-disc);  // sqrt(ω² − (γ/2)²)
        sol.lambda_plus = {-wd, -hg};
        sol.lambda_minus = {wd, -hg};
        // r± = −i(x ∓ sqrt(x² − 1)), x = 2ω/γ > 1.  Using u = ω + wd gives
        // r+ = −i(γ/2)/u and r− = −i·u/(γ/2) with r+·r− = −1 and no
        // subtraction of nearly equal terms.
        const double u = w + wd;
        if (hg > 0.0) {
            sol.ratio_plus = {0.0, -hg / u};
            sol.ratio_minus = {0.0, -u / hg};
        } else {
            // Lossless limit: H is diagonal; the λ− = +ω mode is (1, 0).
            sol.ratio_plus = {0.0, 0.0};
            sol.ratio_minus = {std::numeric_limits<double>::infinity(), 0.0};
        }
        sol.vec_plus = vector_from_ratio_stable(cplx{0.0, -hg}, cplx{u, 0.0});
        sol.vec_minus = vector_from_ratio_stable(cplx{0.0, -u}, cplx{hg, 0.0});
    }

    if (sol.degenerate) {
        // Coalesced vector: both slots get the single EP eigenvector (−i, 1).
        sol.vec_minus = sol.vec_plus;
    }
    return sol;
}

EigenSolution eigen_numeric(const EffectiveHamiltonian& h) {
    for (const auto& row : h.m)
        for (const auto& e : row)
            if (!finite(e.real()) || !finite(e.imag()))
                throw std::invalid_argument("eigen_numeric: non-finite entry");

    const cplx half_tr = h.trace() / 2.0;
    const cplx det = determinant_compensated(h);
    const cplx w0 = std::sqrt(det - half_tr * half_tr);

    // Both direct roots are fine unless one nearly cancels between half_tr
    // and ±i·w0; that one is recovered from the product instead, so both the
    // trace and the determinant identities hold to rounding at any ratio.
    const cplx r_a = half_tr + kImag * w0;
    const cplx r_b = half_tr - kImag * w0;
    cplx big = (std::abs(r_a) >= std::abs(r_b)) ? r_a : r_b;
    cplx small = (std::abs(r_a) >= std::abs(r_b)) ? r_b : r_a;
    const double term_scale = std::abs(half_tr) + std::abs(w0);
    if (std::abs(small) < 0.1 * term_scale && std::abs(big) > 0.0)
        small = det / big;

    // Branch convention matches eigen_analytic: λ+ sits at half_tr + i·w0.
    EigenSolution sol;
    if (std::abs(big - r_a) <= std::abs(small - r_a)) {
        sol.lambda_plus = big;
        sol.lambda_minus = small;
    } else {
        sol.lambda_plus = small;
        sol.lambda_minus = big;
    }

    // Recover the physical scales from the entries for the phase label.
    const double gamma_rec = std::max(0.0, -std::imag(h.trace()));
    const double omega_rec = std::sqrt(std::max(0.0, -det.real()));
    if (omega_rec > 0.0) {
        sol.phase = classify_phase(omega_rec, gamma_rec);
    } else {
        sol.phase = DampingPhase::OverDampingAptSymmetric;
    }
    sol.degenerate = (sol.phase == DampingPhase::CriticalDampingEp);

    // Per-eigenvalue row choice: the row relation with the larger vector norm
    // is the well-conditioned one.
    auto vec_for = [&h](cplx lambda) -> std::array<cplx, 2> {
        const cplx v0_a = h.m[0][1], v1_a = lambda - h.m[0][0];  // row 0
        const cplx v0_b = lambda - h.m[1][1], v1_b = h.m[1][0];  // row 1
        const double na = std::norm(v0_a) + std::norm(v1_a);
        const double nb = std::norm(v0_b) + std::norm(v1_b);
        return (na >= nb) ? normalize_vector(v0_a, v1_a)
                          : normalize_vector(v0_b, v1_b);
    };
    auto ratio_of = [](const std::array<cplx, 2>& v) -> cplx {
        if (std::abs(v[1]) == 0.0)
            return {std::numeric_limits<double>::infinity(), 0.0};
        return v[0] / v[1];
    };
    sol.vec_plus = vec_for(sol.lambda_plus);
    sol.vec_minus = sol.degenerate ? sol.vec_plus : vec_for(sol.lambda_minus);
    sol.ratio_plus = ratio_of(sol.vec_plus);
    sol.ratio_minus = ratio_of(sol.vec_minus);
    return sol;
}

PtEigenstateResult pt_eigenstate_test(const EigenSolution& sol) {
    // σ_x·conj(v) ∝ v  ⟺  conj(v1)·v1 − conj(v0)·v0 = 0  ⟺  |v1| = |v0|.
    auto is_pt = [](const std::array<cplx, 2>& v) {
        const double cross = std::norm(v[1]) - std::norm(v[0]);
        const double scale = std::norm(v[0]) + std::norm(v[1]);
        return std::abs(cross) <= 1e-9 * scale;
    };
    PtEigenstateResult r;
    r.degenerate = sol.degenerate;
    if (sol.degenerate) {
        const bool v = is_pt(sol.vec_plus);
        r.plus = r.minus = v;
        return r;
    }
    r.plus = is_pt(sol.vec_plus);
    r.minus = is_pt(sol.vec_minus);
    return r;
}

}  // namespace aptmech
