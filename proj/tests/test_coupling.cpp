#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "wgqed/coupling.hpp"

using namespace wgqed;
using std::numbers::pi;

namespace {
const WaveguideGeometry kGuide{4.0, 2.0};
constexpr double kGammaPrimeCenter = 1.9032545704179131;
}  // namespace

TEST_CASE("gamma_prime against the closed form") {
    CHECK(gamma_prime(kGuide, 2.0) == doctest::Approx(kGammaPrimeCenter).epsilon(1e-14));
    // sin^2 scaling: half the guide position from the wall at xi_x = 1.
    CHECK(gamma_prime(kGuide, 1.0) ==
          doctest::Approx(kGammaPrimeCenter / 2).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_prime(kGuide, 0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_prime(WaveguideGeometry(7.0, 3.5), 3.5), std::domain_error);
}

TEST_CASE("normalization calibration is exact") {
    CHECK(calibrate_normalization(kGuide) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(calibrate_normalization(WaveguideGeometry(5.0, 2.2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-atom self coupling") {
    const AtomSite site{{2.0, 1.0}, 0.0};
    const auto mm = sigma_element(kGuide, site, {-1}, site, {-1});
    const auto pp = sigma_element(kGuide, site, {+1}, site, {+1});
    const auto mp = sigma_element(kGuide, site, {-1}, site, {+1});
    const auto zz = sigma_element(kGuide, site, {0}, site, {0});

    // Each circular sublevel decays at gamma'/2 into TE10; the Lamb-shift
    // (real) part is dropped from same-site elements.
    CHECK(mm.imag() == doctest::Approx(-kGammaPrimeCenter / 2).epsilon(1e-12));
    CHECK(mm.real() == doctest::Approx(0.0));
    CHECK(pp == mm);

    // The sigma- / sigma+ cross term has the same magnitude: this is what
    // makes (|-1> - |+1>)/sqrt(2) dark and the bright state decay at 2gamma'.
    CHECK(mp.imag() == doctest::Approx(-kGammaPrimeCenter / 2).epsilon(1e-12));
    CHECK(mp.real() == doctest::Approx(0.0));

    // TE10 has no longitudinal field: the pi sublevel is uncoupled.
    CHECK(std::abs(zz) < 1e-14);
    CHECK(std::abs(sigma_element(kGuide, site, {-1}, site, {0})) < 1e-14);
}

TEST_CASE("distant pair exchanges photons through TE10 only") {
    const AtomSite a{{2.0, 1.0}, 0.0};
    const AtomSite b{{2.0, 1.0}, 40.0};
    const auto el = sigma_element(kGuide, a, {-1}, b, {-1});

    // Evanescent modes have died off over dz = 40; what remains is the
    // propagating channel with magnitude gamma'/2 and phase kappa*dz - pi/2.
    const double kappa = std::sqrt(1.0 - pi * pi / 16);
    CHECK(std::abs(el) == doctest::Approx(kGammaPrimeCenter / 2).epsilon(1e-10));
    const auto expected = std::complex<double>(0, -1) * (kGammaPrimeCenter / 2) *
                          std::exp(std::complex<double>(0, kappa * 40.0));
    CHECK(std::abs(el - expected) < 1e-10);

    // Exchange is symmetric under swapping the sites for equal sublevels.
    const auto swapped = sigma_element(kGuide, b, {-1}, a, {-1});
    CHECK(std::abs(el - swapped) < 1e-12);
}

TEST_CASE("near pair picks up evanescent contributions") {
    const AtomSite a{{1.3, 0.7}, 0.0};
    const AtomSite b{{2.6, 1.2}, 0.4};
    const auto el = sigma_element(kGuide, a, {-1}, b, {-1});
    // At sub-wavelength separation the evanescent (real, near-field) part is
    // comparable to the radiative one.
    CHECK(std::abs(el.real()) > 1e-3);
}

TEST_CASE("minimum axial separation is enforced") {
    const AtomSite a{{2.0, 1.0}, 0.0};
    const AtomSite b{{2.0, 1.0}, 0.01};
    CHECK_THROWS_AS(sigma_element(kGuide, a, {-1}, b, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(build_sigma(kGuide, {a, b}), std::invalid_argument);
}

TEST_CASE("build_sigma validates positions") {
    CHECK_THROWS_AS(build_sigma(kGuide, {{{4.5, 1.0}, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(build_sigma(kGuide, {{{2.0, 0.0}, 0.0}}), std::domain_error);
}

TEST_CASE("decay matrix is PSD with the single-atom spectrum {0, 0, 2gamma'}") {
    const auto single = build_sigma(kGuide, {{{2.0, 1.0}, 0.0}});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(single.decay_matrix());
    REQUIRE(es.info() == Eigen::Success);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.0));
    CHECK(es.eigenvalues()(2) ==
          doctest::Approx(2 * kGammaPrimeCenter).epsilon(1e-10));

    // A scattered few-atom configuration stays PSD.
    const auto multi = build_sigma(kGuide, {{{1.1, 0.6}, 0.0},
                                            {{2.7, 1.4}, 1.3},
                                            {{3.2, 0.9}, 7.8},
                                            {{0.8, 1.7}, 15.2}});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es4(multi.decay_matrix());
    REQUIRE(es4.info() == Eigen::Success);
    const double scale = es4.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(es4.eigenvalues()(0) >= -1e-10 * scale);
}

TEST_CASE("mode sum is converged at the default index cap") {
    const AtomSite a{{1.3, 0.7}, 0.0};
    const AtomSite b{{2.6, 1.2}, 1.0};
    CouplingOptions lo, hi;
    lo.max_index = 40;
    hi.max_index = 90;
    const auto e1 = sigma_element(kGuide, a, {-1}, b, {+1}, lo);
    const auto e2 = sigma_element(kGuide, a, {-1}, b, {+1}, hi);
    CHECK(std::abs(e1 - e2) < 1e-10);
}
