#pragma once

#include <cstdint>
#include <vector>

#include "wgqed/coupling.hpp"
#include "wgqed/scattering.hpp"

namespace wgqed {

struct EnsembleSpec {
    double density = 2e-3;   // n * lambdabar^3
    double length = 750.0;   // k0 * L
    int n_configs = 1;
    std::uint64_t seed = 0;
    double min_axial_sep = 0.05;
    bool single_atom = false;  // force N = 1 (random single-atom averaging)
    int n_atoms_override = 0;  // > 0 replaces the density-implied count
    int max_index = 60;
};

int implied_atom_count(const EnsembleSpec& spec, const WaveguideGeometry& geom);

// N sites uniform over (0,ka) x (0,kb) x (0,length); pairwise axial
// separations >= min_axial_sep. The RNG stream is derived deterministically
// from (seed, config_index).
std::vector<AtomSite> sample_sites(const EnsembleSpec& spec, const WaveguideGeometry& geom,
                                   int config_index);

struct AveragedTransport {
    double T_mean;
    double T_stderr;
    double R_mean;
};

AveragedTransport averaged_transport(const EnsembleSpec& spec, const WaveguideGeometry& geom,
                                     const ZeemanField& field, double delta);

// Scan over the grid, averaged over configurations. Sigma is built once per
// configuration and reused across the whole grid. scan_is_dz selects between
// a Zeeman scan at fixed delta and a detuning scan at fixed dz.
std::vector<AveragedTransport> averaged_scan(const EnsembleSpec& spec,
                                             const WaveguideGeometry& geom,
                                             const std::vector<double>& grid, bool scan_is_dz,
                                             double fixed);

}  // namespace wgqed
