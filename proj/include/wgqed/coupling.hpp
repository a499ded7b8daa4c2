#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wgqed/geometry.hpp"

namespace wgqed {

// Excited-state Zeeman sublevel of the J=0 <-> J=1 transition. The associated
// dipole directions are the spherical unit vectors; the convention is fixed by
// requiring that (|-1> - |+1>)/sqrt(2) is the x-oriented dark state.
struct Sublevel {
    int m;  // -1, 0, +1

    Eigen::Vector3cd dipole() const;
};

// Sublevel ordering inside each atom block.
inline constexpr int kSublevels[3] = {-1, 0, +1};

struct AtomSite {
    TransversePoint p;
    double z;  // k0-scaled axial coordinate
};

struct CouplingOptions {
    int max_index = 60;
    double min_axial_separation = 0.05;
    double evanescent_cutoff = 1e-12;  // keep mode while exp(-|kappa| dz)/|kappa| >= this
};

// Complex 3N x 3N matrix Sigma in units of gamma0. Atom-major ordering,
// sublevels (-1, 0, +1) within each block. The anti-Hermitian part encodes
// radiative decay, off-diagonal blocks photon exchange through the guide.
class CouplingMatrix {
public:
    CouplingMatrix(WaveguideGeometry geom, Eigen::MatrixXcd sigma, std::vector<AtomSite> sites,
                   CouplingOptions opts)
        : geom_(geom), sigma_(std::move(sigma)), sites_(std::move(sites)), opts_(opts) {}

    const WaveguideGeometry& geometry() const { return geom_; }
    const Eigen::MatrixXcd& sigma() const { return sigma_; }
    const std::vector<AtomSite>& sites() const { return sites_; }
    const CouplingOptions& options() const { return opts_; }
    int n_atoms() const { return static_cast<int>(sites_.size()); }
    int dim() const { return 3 * n_atoms(); }

    // Gamma = i (Sigma - Sigma^dagger); Hermitian, positive semidefinite.
    Eigen::MatrixXcd decay_matrix() const;

private:
    WaveguideGeometry geom_;
    Eigen::MatrixXcd sigma_;
    std::vector<AtomSite> sites_;
    CouplingOptions opts_;
};

// TE10 decay rate of a circular sublevel at transverse position xi_x, in
// gamma0 units: 3*pi / (ka*kb*sqrt(1 - (pi/ka)^2)) * sin^2(pi*xi_x/ka).
// Requires a single-mode guide.
double gamma_prime(const WaveguideGeometry& geom, double xi_x);

// One matrix element of Sigma from the guided-mode sum. Distinct sites must
// be separated axially by at least opts.min_axial_separation.
std::complex<double> sigma_element(const WaveguideGeometry& geom, const AtomSite& site_i,
                                   Sublevel e, const AtomSite& site_j, Sublevel e2,
                                   const CouplingOptions& opts = {});

CouplingMatrix build_sigma(const WaveguideGeometry& geom, const std::vector<AtomSite>& sites,
                           const CouplingOptions& opts = {});

// Ratio of the TE10-only self decay rate of a circular sublevel to
// gamma_prime; identically 1 for a consistent normalization.
double calibrate_normalization(const WaveguideGeometry& geom);

}  // namespace wgqed
