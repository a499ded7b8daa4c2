#include "wgqed/coupling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wgqed {

namespace {

constexpr double kPi = std::numbers::pi;
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

// Per-mode data reused across all matrix elements.
struct ModeTerm {
    ModeFamily family;
    double kx, ky;
    double cutoff2;
    complexd kappa;
    double abs_kappa;
    bool propagating;
    double norm;  // dimensionless transverse norm of the modal vector
};

std::vector<ModeTerm> mode_terms(const WaveguideGeometry& geom, int max_index) {
    std::vector<ModeTerm> terms;
    const auto modes = enumerate_modes(geom, max_index);
    terms.reserve(modes.size());
    const double quarter = geom.ka * geom.kb / 4.0;
    for (const auto& mode : modes) {
        ModeTerm t;
        t.family = mode.family;
        t.kx = mode.m * kPi / geom.ka;
        t.ky = mode.n * kPi / geom.kb;
        t.cutoff2 = mode.cutoff * mode.cutoff;
        t.kappa = mode.axial;
        t.abs_kappa = std::abs(mode.axial);
        t.propagating = mode.propagating();
        // TE: integral of |grad psi_c|^2; the index-0 trig factor integrates
        // to the full side length instead of half of it.
        // TM: kappa^2 |grad psi|^2 + cutoff^4 psi^2 integrates to
        // cutoff^2 * ka*kb/4 (using kappa^2 + cutoff^2 = 1).
        if (mode.family == ModeFamily::TE)
            t.norm = t.cutoff2 * quarter * ((mode.m == 0 || mode.n == 0) ? 2.0 : 1.0);
        else
            t.norm = t.cutoff2 * quarter;
        terms.push_back(t);
    }
    return terms;
}

// Complex modal vector at a transverse point for propagation direction
// dir = +/-1. TM transverse components carry the factor i*dir*kappa relative
// to the longitudinal part; TE profiles are direction-independent.
Eigen::Vector3cd modal_vector(const ModeTerm& t, const TransversePoint& p, int dir) {
    const double sx = std::sin(t.kx * p.x), cx = std::cos(t.kx * p.x);
    const double sy = std::sin(t.ky * p.y), cy = std::cos(t.ky * p.y);
    if (t.family == ModeFamily::TE)
        return {complexd(t.ky * cx * sy), complexd(-t.kx * sx * cy), complexd(0.0)};
    const complexd f = kI * static_cast<double>(dir) * t.kappa;
    return {f * (t.kx * cx * sy), f * (t.ky * sx * cy), complexd(t.cutoff2 * sx * sy)};
}

complexd mode_contribution(const ModeTerm& t, const AtomSite& site_i, const Eigen::Vector3cd& d_i,
                           const AtomSite& site_j, const Eigen::Vector3cd& d_j, int dir,
                           double adz) {
    const Eigen::Vector3cd ui = modal_vector(t, site_i.p, dir);
    const Eigen::Vector3cd uj = modal_vector(t, site_j.p, -dir);
    // d_i* . u_i times u_j . d_j (no conjugation on the second modal vector).
    const complexd overlap = d_i.dot(ui) * uj.conjugate().dot(d_j);
    return -kI * (1.5 * kPi) * overlap / (t.norm * t.kappa) * std::exp(kI * t.kappa * adz);
}

bool same_site(const AtomSite& a, const AtomSite& b) {
    return a.p.x == b.p.x && a.p.y == b.p.y && a.z == b.z;
}

complexd element_from_terms(const std::vector<ModeTerm>& terms, const WaveguideGeometry& geom,
                            const AtomSite& site_i, Sublevel e, const AtomSite& site_j,
                            Sublevel e2, const CouplingOptions& opts) {
    const Eigen::Vector3cd d_i = e.dipole();
    const Eigen::Vector3cd d_j = e2.dipole();
    const double dz = site_i.z - site_j.z;
    const double adz = std::abs(dz);

    if (same_site(site_i, site_j)) {
        // On-site element: only the radiative (imaginary) part from
        // propagating modes is kept; real parts are level shifts absorbed
        // into omega0, and the evanescent tail of the real part diverges at
        // zero separation anyway. Forward/backward averaging removes the
        // direction-odd transverse-longitudinal cross terms.
        complexd acc = 0.0;
        for (const auto& t : terms) {
            if (!t.propagating) continue;
            acc += 0.5 * (mode_contribution(t, site_i, d_i, site_j, d_j, +1, 0.0) +
                          mode_contribution(t, site_i, d_i, site_j, d_j, -1, 0.0));
        }
        return complexd(0.0, acc.imag());
    }

    if (adz < opts.min_axial_separation)
        throw std::invalid_argument("distinct atoms closer than the minimum axial separation");

    const int dir = dz > 0 ? +1 : -1;
    complexd acc = 0.0;
    for (const auto& t : terms) {
        if (!t.propagating &&
            std::exp(-t.abs_kappa * adz) / t.abs_kappa < opts.evanescent_cutoff)
            break;  // terms are sorted by cutoff, the tail only shrinks
        acc += mode_contribution(t, site_i, d_i, site_j, d_j, dir, adz);
    }
    (void)geom;
    return acc;
}

}  // namespace

Eigen::Vector3cd Sublevel::dipole() const {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    switch (m) {
        case -1: return {complexd(inv_sqrt2), complexd(0.0, -inv_sqrt2), complexd(0.0)};
        case 0: return {complexd(0.0), complexd(0.0), complexd(1.0)};
        case +1: return {complexd(-inv_sqrt2), complexd(0.0, -inv_sqrt2), complexd(0.0)};
        default: throw std::invalid_argument("sublevel m must be -1, 0 or +1");
    }
}

Eigen::MatrixXcd CouplingMatrix::decay_matrix() const {
    return kI * (sigma_ - sigma_.adjoint());
}

double gamma_prime(const WaveguideGeometry& geom, double xi_x) {
    if (!is_single_mode(geom))
        throw std::domain_error("gamma_prime assumes a single propagating TE10 channel");
    if (!(xi_x > 0.0 && xi_x < geom.ka))
        throw std::domain_error("xi_x must lie strictly inside (0, ka)");
    const double ratio = kPi / geom.ka;
    const double s = std::sin(kPi * xi_x / geom.ka);
    return 3.0 * kPi / (geom.ka * geom.kb * std::sqrt(1.0 - ratio * ratio)) * s * s;
}

std::complex<double> sigma_element(const WaveguideGeometry& geom, const AtomSite& site_i,
                                   Sublevel e, const AtomSite& site_j, Sublevel e2,
                                   const CouplingOptions& opts) {
    return element_from_terms(mode_terms(geom, opts.max_index), geom, site_i, e, site_j, e2,
                              opts);
}

CouplingMatrix build_sigma(const WaveguideGeometry& geom, const std::vector<AtomSite>& sites,
                           const CouplingOptions& opts) {
    for (const auto& site : sites)
        if (!(site.p.x > 0.0 && site.p.x < geom.ka && site.p.y > 0.0 && site.p.y < geom.kb))
            throw std::domain_error("atom outside the cross-section");
    const int n = static_cast<int>(sites.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(sites[i].z - sites[j].z) < opts.min_axial_separation)
                throw std::invalid_argument(
                    "distinct atoms closer than the minimum axial separation");

    const auto terms = mode_terms(geom, opts.max_index);
    Eigen::MatrixXcd sigma(3 * n, 3 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    sigma(3 * i + a, 3 * j + b) =
                        element_from_terms(terms, geom, sites[i], Sublevel{kSublevels[a]},
                                           sites[j], Sublevel{kSublevels[b]}, opts);
    return CouplingMatrix(geom, std::move(sigma), sites, opts);
}

double calibrate_normalization(const WaveguideGeometry& geom) {
    if (!is_single_mode(geom))
        throw std::domain_error("calibration requires a single-mode geometry");
    const AtomSite center{{geom.ka / 2.0, geom.kb / 2.0}, 0.0};
    // TE10-only self term for a circular sublevel.
    std::vector<ModeTerm> te10;
    for (const auto& t : mode_terms(geom, 1))
        if (t.family == ModeFamily::TE && t.propagating) te10.push_back(t);
    const complexd self =
        element_from_terms(te10, geom, center, Sublevel{-1}, center, Sublevel{-1}, {});
    return -2.0 * self.imag() / gamma_prime(geom, center.p.x);
}

}  // namespace wgqed
