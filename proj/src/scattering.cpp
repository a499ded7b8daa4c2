#include "wgqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wgqed {

namespace {

constexpr double kPi = std::numbers::pi;
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

double te10_axial(const WaveguideGeometry& geom) {
    const double r = kPi / geom.ka;
    return std::sqrt(1.0 - r * r);
}

// Common structure of the TE10 field coefficients: sign_i * i * (3pi/2) *
// sin(pi x1/ka) sin(pi x2/ka) exp(i kappa |dz|) / (ka kb kappa). A1 and A2
// carry sign_i = -1 (and the incident normalization C = 1), A3 carries +1.
complexd field_coef(const WaveguideGeometry& geom, double x1, double x2, double adz,
                    double sign_i) {
    const double kappa = te10_axial(geom);
    const double pref = 1.5 * kPi / (geom.ka * geom.kb * kappa);
    return sign_i * kI * pref * std::sin(kPi * x1 / geom.ka) * std::sin(kPi * x2 / geom.ka) *
           std::exp(kI * kappa * adz);
}

void check_single_mode(const WaveguideGeometry& geom) {
    if (!is_single_mode(geom)) throw std::domain_error("transport assumes a single-mode guide");
}

double min_z(const std::vector<AtomSite>& sites) {
    double z = std::numeric_limits<double>::infinity();
    for (const auto& s : sites) z = std::min(z, s.z);
    return z;
}

double max_z(const std::vector<AtomSite>& sites) {
    double z = -std::numeric_limits<double>::infinity();
    for (const auto& s : sites) z = std::max(z, s.z);
    return z;
}

}  // namespace

Eigen::VectorXcd drive_vector(const WaveguideGeometry& geom, const std::vector<AtomSite>& sites,
                              const ProbeSpec& probe) {
    check_single_mode(geom);
    if (!sites.empty() && !(probe.source_z <= min_z(sites) - 50.0))
        throw std::invalid_argument("probe source must sit at least 50 units before the sample");
    Eigen::VectorXcd drive = Eigen::VectorXcd::Zero(3 * sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const complexd a1 = field_coef(geom, sites[i].p.x, probe.source_x,
                                       std::abs(sites[i].z - probe.source_z), -1.0);
        drive(3 * i) = a1;      // sigma-
        drive(3 * i + 2) = a1;  // sigma+; the pi entry stays zero
    }
    return drive;
}

StationarySolution solve_stationary(const CouplingMatrix& sigma, const ZeemanField& field,
                                    const ProbeSpec& probe, const ScatteringOptions& opts) {
    StationarySolution sol;
    if (sigma.n_atoms() == 0) {
        sol.b.resize(0);
        return sol;
    }
    const Eigen::VectorXcd drive = drive_vector(sigma.geometry(), sigma.sites(), probe);
    // Kernel of the stationary system: (delta - (m+1) dz) on the diagonal
    // minus Sigma; signs chosen so the single-atom solution reproduces the
    // closed-form amplitudes.
    Eigen::MatrixXcd M = -sigma.sigma();
    for (int i = 0; i < sigma.n_atoms(); ++i)
        for (int a = 0; a < 3; ++a)
            M(3 * i + a, 3 * i + a) += probe.delta - (kSublevels[a] + 1) * field.dz;

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
    sol.b = lu.solve(drive);
    // A singular kernel is harmless while the system stays consistent (e.g. an
    // undriven pi sublevel exactly on resonance). Only an inconsistent system
    // -- a real pole of the driven subspace -- needs to be pushed off the real
    // axis toward the decaying half-plane.
    const double residual = (M * sol.b - drive).norm();
    if (!sol.b.allFinite() || residual > 1e-6 * drive.norm()) {
        M.diagonal().array() += kI * opts.pole_epsilon;
        sol.regularized = true;
        sol.b = Eigen::FullPivLU<Eigen::MatrixXcd>(M).solve(drive);
    }
    return sol;
}

std::complex<double> transmitted_amplitude(const WaveguideGeometry& geom,
                                           const std::vector<AtomSite>& sites,
                                           const StationarySolution& sol, const ProbeSpec& probe,
                                           double detector_x, double detector_z) {
    check_single_mode(geom);
    if (!sites.empty() && !(detector_z >= max_z(sites) + 50.0))
        throw std::domain_error("transmission detector must sit beyond the sample");
    complexd e_t = field_coef(geom, detector_x, probe.source_x,
                              std::abs(detector_z - probe.source_z), -1.0);  // A2
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const complexd a3 = field_coef(geom, sites[i].p.x, detector_x,
                                       std::abs(sites[i].z - detector_z), +1.0);
        e_t -= a3 * (sol.b(3 * i) + sol.b(3 * i + 2));
    }
    return e_t;
}

std::complex<double> reflected_amplitude(const WaveguideGeometry& geom,
                                         const std::vector<AtomSite>& sites,
                                         const StationarySolution& sol, const ProbeSpec& probe,
                                         double detector_x, double detector_z) {
    check_single_mode(geom);
    if (!sites.empty() && !(detector_z <= min_z(sites) - 50.0))
        throw std::domain_error("reflection detector must sit before the sample");
    (void)probe;
    complexd e_r = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const complexd a3 = field_coef(geom, sites[i].p.x, detector_x,
                                       std::abs(sites[i].z - detector_z), +1.0);
        e_r -= a3 * (sol.b(3 * i) + sol.b(3 * i + 2));
    }
    return e_r;
}

TransportResult transport(const CouplingMatrix& sigma, const ZeemanField& field, double delta,
                          const ScatteringOptions& opts) {
    const auto& geom = sigma.geometry();
    check_single_mode(geom);
    const auto& sites = sigma.sites();
    const double lo = sites.empty() ? 0.0 : min_z(sites);
    const double hi = sites.empty() ? 0.0 : max_z(sites);

    ProbeSpec probe;
    probe.delta = delta;
    probe.source_x = geom.ka / 2.0;
    probe.source_z = lo - opts.standoff;
    const double det_x = geom.ka / 2.0;

    TransportResult res;
    const auto sol = solve_stationary(sigma, field, probe, opts);
    res.regularized = sol.regularized;
    res.t_amp = transmitted_amplitude(geom, sites, sol, probe, det_x, hi + opts.standoff);
    res.r_amp = reflected_amplitude(geom, sites, sol, probe, det_x, lo - opts.standoff);
    const double pt = std::norm(res.t_amp);
    const double pr = std::norm(res.r_amp);
    // Only TE10 survives at the detectors, so the transverse average over the
    // observation point multiplies both powers by the same factor and cancels.
    res.T = pt / (pt + pr);
    res.R = pr / (pt + pr);
    return res;
}

std::vector<ScanPoint> spectrum_scan(const CouplingMatrix& sigma, const std::vector<double>& grid,
                                     bool scan_is_dz, double fixed,
                                     const ScatteringOptions& opts) {
    if (grid.empty()) throw std::invalid_argument("scan grid must be nonempty");
    std::vector<ScanPoint> out;
    out.reserve(grid.size());
    for (double v : grid) {
        const double dz = scan_is_dz ? v : fixed;
        const double delta = scan_is_dz ? fixed : v;
        const auto res = transport(sigma, ZeemanField{dz}, delta, opts);
        out.push_back({v, res.T, res.R});
    }
    return out;
}

}  // namespace wgqed
