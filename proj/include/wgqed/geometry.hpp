#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace wgqed {

// All lengths are premultiplied by the resonant wavenumber k0, so the guide
// cross-section is (ka, kb) = (k0*a, k0*b) and cutoffs/axial constants are in
// units of k0.
struct WaveguideGeometry {
    double ka;
    double kb;

    // Requires ka >= kb > 0 (wide side along x).
    WaveguideGeometry(double ka_, double kb_);
};

enum class ModeFamily { TE, TM };

struct GuidedMode {
    ModeFamily family;
    int m;
    int n;
    double cutoff;                 // k_c / k0
    std::complex<double> axial;    // kappa = k_z / k0, principal branch

    bool propagating() const { return cutoff < 1.0; }
};

// Transverse position strictly inside the cross-section, k0-scaled.
struct TransversePoint {
    double x;
    double y;
};

// Principal branch: Re >= 0 and Im >= 0, so exp(i*kappa*|dz|) never grows.
std::complex<double> axial_constant(double cutoff);

// All TE/TM modes with indices up to max_index, sorted by cutoff ascending
// (family, m, n as tie-breakers for a deterministic order).
std::vector<GuidedMode> enumerate_modes(const WaveguideGeometry& geom, int max_index);

// True iff exactly one mode propagates (the TE10 regime).
bool is_single_mode(const WaveguideGeometry& geom);

// Real, unnormalized transverse field profile (Ex, Ey, Ez) of a mode at a
// point inside the cross-section. Throws std::domain_error on or outside the
// walls.
Eigen::Vector3d mode_profile(const GuidedMode& mode, const WaveguideGeometry& geom,
                             const TransversePoint& p);

}  // namespace wgqed
