#include "doctest.h"

#include <cmath>

#include "aptmech/sensing.hpp"
#include "test_util.hpp"

using namespace aptmech;
using doctest::Approx;

namespace {

// High-quality resonator in desk units: omega/gamma = 1e4.
OptomechParams high_q_params() {
    OptomechParams p;
    p.resonator = {1.0, 1e-4, 3.6e-15};
    p.gamma_c = 50.0;
    p.g = -0.01;
    return p;
}

}  // namespace

TEST_CASE("exact splitting") {
    SUBCASE("coalesces at the first EP") {
        auto p = testutil::desk_params();
        p.Omega = locate_eps(p).omega_ep1;
        const auto s = splitting_exact(p, 0.0);
        // the EP drive is itself rounded, leaving a sqrt(eps)-size residue
        CHECK(std::abs(s.omega_plus) <= 1e-7 * p.resonator.omega_m);
    }
    SUBCASE("square-root response at EP1 with the EP-enhancement prefactor") {
        auto p = high_q_params();
        p.Omega = locate_eps(p).omega_ep1;
        const double gm = p.resonator.gamma_m;
        const double delta = 1e-4 * gm;
        const auto s = splitting_exact(p, delta);
        CHECK(s.omega_plus / gm == Approx(1.0).epsilon(0.01));
        CHECK(s.omega_plus ==
              Approx(std::sqrt(p.resonator.omega_m * delta)).epsilon(0.01));
    }
    SUBCASE("no drive: linear response at the bare frequency") {
        auto p = high_q_params();
        p.Omega = 0.0;
        const auto s = splitting_exact(p, 0.1);
        CHECK(s.omega_plus == Approx(1.1).epsilon(1e-3));
    }
    SUBCASE("between the EPs the real splitting closes; decay rates split") {
        auto p = testutil::desk_params(1.0);  // at Omega_c, inside [EP1, EP2]
        const auto s = splitting_exact(p, 0.0);
        CHECK(s.omega_plus == 0.0);
        CHECK(s.omega_minus == 0.0);
        CHECK(s.decay_splitting > 0.0);
        CHECK_FALSE(s.resolvable);
    }
    SUBCASE("guards") {
        auto p = testutil::desk_params();
        CHECK_THROWS_AS(splitting_exact(p, -2.0), std::invalid_argument);
        p.g = 0.01;
        CHECK_THROWS_AS(splitting_exact(p, 0.0), std::domain_error);
    }
}

TEST_CASE("closed-form sensitivity") {
    SUBCASE("no drive: unit sensitivity at high quality") {
        auto p = high_q_params();
        p.Omega = 0.0;
        const auto s = sensitivity_analytic(p);
        CHECK(s.regime == -1);
        CHECK(std::abs(s.plus) == Approx(1.0).epsilon(1e-6));
        CHECK(s.minus == -s.plus);
    }
    SUBCASE("pinned to zero between the EPs") {
        auto p = testutil::desk_params(1.0);
        const auto s = sensitivity_analytic(p);
        CHECK(s.regime == 0);
        CHECK(s.plus == 0.0);
        CHECK_FALSE(s.diverged);
    }
    SUBCASE("matches the finite-difference oracle away from the EPs") {
        auto p = testutil::desk_params();
        const auto eps = locate_eps(p);
        p.Omega = 1.5 * eps.omega_ep2;
        const auto s = sensitivity_analytic(p);
        CHECK(s.regime == 1);
        const double h = 1e-6 * p.resonator.omega_m;
        const double fd = (splitting_exact(p, h).omega_plus -
                           splitting_exact(p, -h).omega_plus) /
                          (2.0 * h);
        CHECK(s.plus == Approx(fd).epsilon(1e-4));
    }
    SUBCASE("signals divergence at an EP") {
        auto p = testutil::desk_params();
        p.Omega = locate_eps(p).omega_ep1 * (1.0 - 1e-13);
        const auto s = sensitivity_analytic(p);
        // so close to the EP the splitting underflows the rounding floor
        // and no finite derivative can be quoted
        if (s.diverged) {
            CHECK(s.plus == 0.0);
        } else {
            CHECK(std::abs(s.plus) > 1e3);
        }
    }
}

TEST_CASE("near-EP approximation") {
    auto p = high_q_params();
    const double gm = p.resonator.gamma_m;
    SUBCASE("EP1 with opening perturbation") {
        const auto s = splitting_near_ep(p, 1e-4 * gm, EpIndex::Ep1);
        CHECK(s.omega_plus / gm == Approx(1.0).epsilon(1e-12));
        CHECK(s.omega_minus == -s.omega_plus);
        // against ground truth
        auto pe = p;
        pe.Omega = locate_eps(p).omega_ep1;
        CHECK(s.omega_plus ==
              Approx(splitting_exact(pe, 1e-4 * gm).omega_plus).epsilon(0.01));
    }
    SUBCASE("EP2 with the opposite sign and doubled prefactor") {
        const auto s = splitting_near_ep(p, -1e-4 * gm, EpIndex::Ep2);
        CHECK(s.omega_plus / gm == Approx(2.0).epsilon(1e-12));
        auto pe = p;
        pe.Omega = locate_eps(p).omega_ep2;
        CHECK(s.omega_plus ==
              Approx(splitting_exact(pe, -1e-4 * gm).omega_plus).epsilon(0.01));
    }
    SUBCASE("zero perturbation, zero splitting") {
        const auto s = splitting_near_ep(p, 0.0, EpIndex::Ep1);
        CHECK(s.omega_plus == 0.0);
        CHECK_FALSE(s.wrong_sign_delta);
    }
    SUBCASE("closing sign reports zero with the flag") {
        const auto s1 = splitting_near_ep(p, -1e-6, EpIndex::Ep1);
        CHECK(s1.omega_plus == 0.0);
        CHECK(s1.wrong_sign_delta);
        const auto s2 = splitting_near_ep(p, 1e-6, EpIndex::Ep2);
        CHECK(s2.omega_plus == 0.0);
        CHECK(s2.wrong_sign_delta);
    }
    SUBCASE("asymptotic-range advisory") {
        const double edge = 0.1 * gm * (gm / p.resonator.omega_m);
        CHECK_FALSE(splitting_near_ep(p, 0.5 * edge, EpIndex::Ep1)
                        .validity_warning);
        CHECK(splitting_near_ep(p, 2.0 * edge, EpIndex::Ep1).validity_warning);
    }
}

TEST_CASE("square-root law against ground truth") {
    auto p = testutil::desk_params();
    p.Omega = locate_eps(p).omega_ep1;
    const double gm = p.resonator.gamma_m;
    for (double d : {1e-6 * gm, 4e-6 * gm}) {
        const double s1 = splitting_exact(p, d).omega_plus;
        const double s4 = splitting_exact(p, 4.0 * d).omega_plus;
        CHECK(s4 / s1 == Approx(2.0).epsilon(0.02));
    }
}

TEST_CASE("EP enhancement grows without bound toward small perturbations") {
    auto p = testutil::desk_params();
    const double gm = p.resonator.gamma_m;
    double previous = 0.0;
    for (int k = 0; k <= 24; ++k) {
        const double d = gm * std::pow(10.0, -8.0 + 0.25 * k);
        const double enhancement =
            splitting_near_ep(p, d, EpIndex::Ep1).omega_plus / d;
        if (k > 0) CHECK(enhancement < previous);
        previous = enhancement;
    }
}

TEST_CASE("far-from-EP linear approximation") {
    auto p = high_q_params();
    const auto eps = locate_eps(p);
    SUBCASE("well below EP1") {
        p.Omega = 0.01 * eps.omega_ep1;
        const auto far = splitting_far(p, 0.0, FarRegime::BelowEp1);
        const auto exact = splitting_exact(p, 0.0);
        CHECK(far.omega_plus == Approx(1.0).epsilon(1e-12));
        CHECK(far.omega_plus == Approx(exact.omega_plus).epsilon(1e-3));
    }
    SUBCASE("well above EP2") {
        p.Omega = 10.0 * eps.omega_ep2;
        const auto far = splitting_far(p, 0.0, FarRegime::AboveEp2);
        const auto exact = splitting_exact(p, 0.0);
        CHECK(far.omega_plus == Approx(2.0).epsilon(1e-12));
        CHECK(far.omega_plus == Approx(exact.omega_plus).epsilon(0.01));
    }
    SUBCASE("perturbation that cancels the frequency zeroes the formula") {
        const auto far =
            splitting_far(p, -p.resonator.omega_m, FarRegime::BelowEp1);
        CHECK(far.omega_plus == 0.0);
    }
}

TEST_CASE("antisymmetry of every splitting output") {
    auto p = testutil::desk_params();
    p.Omega = locate_eps(p).omega_ep2;
    for (double d : {-1e-3, -1e-6, 0.0, 1e-6, 1e-3}) {
        CHECK(splitting_exact(p, d).omega_plus +
                  splitting_exact(p, d).omega_minus ==
              0.0);
        CHECK(splitting_near_ep(p, d, EpIndex::Ep2).omega_plus +
                  splitting_near_ep(p, d, EpIndex::Ep2).omega_minus ==
              0.0);
        CHECK(splitting_far(p, d, FarRegime::AboveEp2).omega_plus +
                  splitting_far(p, d, FarRegime::AboveEp2).omega_minus ==
              0.0);
    }
    CHECK(mass_splitting(p, 1e-20).omega_plus +
              mass_splitting(p, 1e-20).omega_minus ==
          0.0);
}

TEST_CASE("nanoparticle mass detection") {
    // Published detection example: m = 3.6 pg at quality 7e5.
    OptomechParams p;
    p.resonator.omega_m = 2.0 * 3.14159265358979323846 * 8.7e6;
    p.resonator.gamma_m = p.resonator.omega_m / 7e5;
    p.resonator.mass = 3.6e-15;
    p.gamma_c = 2.0 * 3.14159265358979323846 * 5e9;
    p.g = -2.0 * 3.14159265358979323846 * 245.0;

    SUBCASE("frequency pull of an adhering particle") {
        const auto pert = mass_perturbation(p, 3.6e-21);
        CHECK(pert.delta ==
              Approx(-0.5 * p.resonator.omega_m * 1e-6).epsilon(1e-12));
        CHECK(pert.delta < 0.0);
    }
    SUBCASE("headline minimum mass lands within 10% of 1e-24 g") {
        const double min_kg = min_resolvable_mass(p);
        CHECK(min_kg == Approx(3.6e-15 / (8.0 * 7e5 * 7e5)).epsilon(1e-12));
        CHECK(min_kg * 1e3 == Approx(1e-24).epsilon(0.10));
    }
    SUBCASE("zero particle: zero splitting, unresolvable") {
        const auto s = mass_splitting(p, 0.0);
        CHECK(s.omega_plus == 0.0);
        CHECK_FALSE(s.resolvable);
    }
    SUBCASE("threshold particle sits exactly at the linewidth") {
        const double m_p = min_resolvable_mass(p);
        const auto s = mass_splitting(p, m_p);
        CHECK(s.resolvable);
        CHECK(2.0 * s.omega_plus ==
              Approx(p.resonator.gamma_m).epsilon(1e-12));
    }
    SUBCASE("ten times the threshold: resolvable, sqrt(10) larger") {
        const double m_p = 10.0 * min_resolvable_mass(p);
        const auto s = mass_splitting(p, m_p);
        CHECK(s.resolvable);
        CHECK(2.0 * s.omega_plus / p.resonator.gamma_m ==
              Approx(std::sqrt(10.0)).epsilon(1e-12));
    }
    SUBCASE("consistency with the near-EP2 formula through the frequency pull") {
        const double m_p = 100.0 * min_resolvable_mass(p);
        const auto via_mass = mass_splitting(p, m_p);
        const auto via_delta =
            splitting_near_ep(p, mass_perturbation(p, m_p).delta, EpIndex::Ep2);
        CHECK(via_mass.omega_plus ==
              Approx(via_delta.omega_plus).epsilon(1e-12));
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(mass_splitting(p, -1.0), std::invalid_argument);
        auto lossless = p;
        lossless.resonator.gamma_m = 0.0;
        CHECK_THROWS_AS(min_resolvable_mass(lossless), std::domain_error);
    }
}
