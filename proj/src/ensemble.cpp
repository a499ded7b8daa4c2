#include "wgqed/ensemble.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wgqed {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic, platform-independent uniforms: mt19937_64 output mapped to
// (0, 1) by hand (std::uniform_real_distribution is implementation-defined).
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}

    double open01() {
        for (;;) {
            const double u = (rng_() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    double open(double length) { return open01() * length; }

private:
    std::mt19937_64 rng_;
};

}  // namespace

int implied_atom_count(const EnsembleSpec& spec, const WaveguideGeometry& geom) {
    if (spec.single_atom) return 1;
    if (spec.n_atoms_override > 0) return spec.n_atoms_override;
    const int n = static_cast<int>(std::llround(spec.density * geom.ka * geom.kb * spec.length));
    if (n < 1) throw std::invalid_argument("ensemble spec implies no atoms");
    return n;
}

std::vector<AtomSite> sample_sites(const EnsembleSpec& spec, const WaveguideGeometry& geom,
                                   int config_index) {
    const int n = implied_atom_count(spec, geom);
    Uniform rng(splitmix64(spec.seed) ^ splitmix64(static_cast<std::uint64_t>(config_index) +
                                                   0x51ed2701a3c5e1b7ULL));
    std::vector<AtomSite> sites;
    sites.reserve(n);
    int attempts = 0;
    while (static_cast<int>(sites.size()) < n) {
        AtomSite cand{{rng.open(geom.ka), rng.open(geom.kb)}, rng.open(spec.length)};
        bool ok = true;
        for (const auto& s : sites)
            if (std::abs(s.z - cand.z) < spec.min_axial_sep) {
                ok = false;
                break;
            }
        if (ok) {
            sites.push_back(cand);
        } else if (++attempts > 1000) {
            throw std::runtime_error("site resampling exceeded 1000 attempts");
        }
    }
    return sites;
}

AveragedTransport averaged_transport(const EnsembleSpec& spec, const WaveguideGeometry& geom,
                                     const ZeemanField& field, double delta) {
    return averaged_scan(spec, geom, {field.dz}, true, delta).front();
}

std::vector<AveragedTransport> averaged_scan(const EnsembleSpec& spec,
                                             const WaveguideGeometry& geom,
                                             const std::vector<double>& grid, bool scan_is_dz,
                                             double fixed) {
    if (spec.n_configs < 1) throw std::invalid_argument("n_configs must be >= 1");
    if (grid.empty()) throw std::invalid_argument("scan grid must be nonempty");

    CouplingOptions copts;
    copts.max_index = spec.max_index;
    copts.min_axial_separation = spec.min_axial_sep;

    const std::size_t np = grid.size();
    std::vector<double> t_sum(np, 0.0), t_sq(np, 0.0), r_sum(np, 0.0);
    for (int c = 0; c < spec.n_configs; ++c) {
        const auto sites = sample_sites(spec, geom, c);
        const auto sigma = build_sigma(geom, sites, copts);
        const auto points = spectrum_scan(sigma, grid, scan_is_dz, fixed);
        for (std::size_t k = 0; k < np; ++k) {
            t_sum[k] += points[k].T;
            t_sq[k] += points[k].T * points[k].T;
            r_sum[k] += points[k].R;
        }
    }

    std::vector<AveragedTransport> out(np);
    const double nc = spec.n_configs;
    for (std::size_t k = 0; k < np; ++k) {
        const double mean = t_sum[k] / nc;
        double stderr_ = 0.0;
        if (spec.n_configs > 1) {
            const double var = std::max(0.0, (t_sq[k] - nc * mean * mean) / (nc - 1.0));
            stderr_ = std::sqrt(var / nc);
        }
        out[k] = {mean, stderr_, r_sum[k] / nc};
    }
    return out;
}

}  // namespace wgqed
