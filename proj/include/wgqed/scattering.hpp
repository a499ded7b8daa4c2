#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wgqed/coupling.hpp"
#include "wgqed/dynamics.hpp"

namespace wgqed {

// Monochromatic TE10 probe. delta is counted from the m_J=-1 resonance, in
// gamma0 units. The source sits far before the sample so only the guided wave
// reaches the atoms; incident normalization C = 1.
struct ProbeSpec {
    double delta = 0.0;
    double source_x = 0.0;  // transverse x of the point source
    double source_z = 0.0;  // must be < min atom z - standoff
};

struct ScatteringOptions {
    double standoff = 50.0;        // source/detector distance beyond the sample
    double pole_epsilon = 1e-9;    // +i eps regularization of the driven system
    double cond_threshold = 1e12;  // condition estimate that triggers it
};

struct StationarySolution {
    Eigen::VectorXcd b;
    bool regularized = false;
};

struct TransportResult {
    std::complex<double> t_amp;  // transmitted TE10 amplitude, incident included
    std::complex<double> r_amp;  // reflected TE10 amplitude, scattered only
    double T = 1.0;
    double R = 0.0;
    bool regularized = false;
};

// Drive entries A1(x_i, z_i) on both circular sublevels of every atom; pi
// entries are zero (TE10 carries no E_z).
Eigen::VectorXcd drive_vector(const WaveguideGeometry& geom, const std::vector<AtomSite>& sites,
                              const ProbeSpec& probe);

StationarySolution solve_stationary(const CouplingMatrix& sigma, const ZeemanField& field,
                                    const ProbeSpec& probe, const ScatteringOptions& opts = {});

// E_t = A2 - sum_i A3(x_i, z_i) (b_{i,-} + b_{i,+}); detector must sit beyond
// the sample.
std::complex<double> transmitted_amplitude(const WaveguideGeometry& geom,
                                           const std::vector<AtomSite>& sites,
                                           const StationarySolution& sol, const ProbeSpec& probe,
                                           double detector_x, double detector_z);

// Purely scattered backward amplitude; detector must sit before the sample.
std::complex<double> reflected_amplitude(const WaveguideGeometry& geom,
                                         const std::vector<AtomSite>& sites,
                                         const StationarySolution& sol, const ProbeSpec& probe,
                                         double detector_x, double detector_z);

// Full stationary transport for the atoms carried by sigma. Source and
// detectors are placed at transverse center, standoff beyond the sample.
TransportResult transport(const CouplingMatrix& sigma, const ZeemanField& field, double delta,
                          const ScatteringOptions& opts = {});

struct ScanPoint {
    double value;  // the scanned parameter
    double T;
    double R;
};

// One transport evaluation per grid point; scan_is_dz selects whether the
// grid scans the Zeeman splitting (fixed delta) or the detuning (fixed dz).
std::vector<ScanPoint> spectrum_scan(const CouplingMatrix& sigma, const std::vector<double>& grid,
                                     bool scan_is_dz, double fixed,
                                     const ScatteringOptions& opts = {});

}  // namespace wgqed
