#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wgqed/coupling.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"

namespace wgqed::oracle {

namespace {

double rel_dev(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / scale;
}

}  // namespace

double max_deviation_vs_numeric(int grid) {
    if (grid < 2) throw std::invalid_argument("grid must be >= 2");
    const WaveguideGeometry geom(4.0, 2.0);
    const double positions[5] = {0.6, 1.3, 2.0, 2.9, 3.6};  // atom xi_x samples
    const double standoff = 60.0;

    double worst = 0.0;
    for (double xa : positions) {
        const AtomSite atom{{xa, geom.kb / 2.0}, 0.0};
        const auto sigma = build_sigma(geom, {atom});

        ProbeSpec probe;
        probe.source_x = geom.ka / 2.0;
        probe.source_z = atom.z - standoff;
        const double det_x = geom.ka / 2.0;
        const double det_fwd = atom.z + standoff;
        const double det_back = atom.z - standoff;

        OracleInputs in;
        in.ka = geom.ka;
        in.kb = geom.kb;
        in.atom_x = atom.p.x;
        in.atom_z = atom.z;
        in.source_x = probe.source_x;
        in.source_z = probe.source_z;
        in.det_x = det_x;
        in.det_z = det_fwd;

        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                const double delta = -15.0 + 30.0 * i / (grid - 1);
                const double dz = 15.0 * j / (grid - 1);
                if (delta == 0.0 && dz == 0.0) continue;  // closed-form pole
                in.delta = delta;
                in.dz = dz;
                probe.delta = delta;

                const auto ana = analytic_amplitudes(in);
                const auto sol = solve_stationary(sigma, ZeemanField{dz}, probe);
                worst = std::max(worst, rel_dev(sol.b(0), ana.b_minus));
                worst = std::max(worst, rel_dev(sol.b(2), ana.b_plus));

                // Normalized transmitted/reflected amplitudes against the
                // composed closed-form transport.
                const StationarySolution empty{Eigen::VectorXcd(), false};
                const auto a2 =
                    transmitted_amplitude(geom, {}, empty, probe, det_x, det_fwd);
                const auto et =
                    transmitted_amplitude(geom, {atom}, sol, probe, det_x, det_fwd);
                const auto er =
                    reflected_amplitude(geom, {atom}, sol, probe, det_x, det_back);
                const auto ana_tr = analytic_transport(in);
                worst = std::max(worst, rel_dev(et / a2, ana_tr.t_amp));
                worst = std::max(worst, std::abs(std::abs(er / a2) - std::abs(ana_tr.r_amp)));
            }
        }
    }
    return worst;
}

}  // namespace wgqed::oracle
