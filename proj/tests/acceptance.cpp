// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status is
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wgqed/coupling.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/ensemble.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"

using namespace wgqed;
using std::numbers::pi;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& text) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
    if (!ok) ++g_failures;
}

double fit_rate(const std::vector<double>& t, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(t.size());
    for (int k = 0; k < n; ++k) {
        sx += t[k];
        sy += std::log(y[k]);
        sxx += t[k] * t[k];
        sxy += t[k] * std::log(y[k]);
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main() {
    const WaveguideGeometry guide(4.0, 2.0);
    const double gp = gamma_prime(guide, 2.0);

    // 1 -- single-mode regime of the (4,2) guide
    {
        const auto modes = enumerate_modes(guide, 2);
        int propagating = 0;
        bool fundamental_is_te10 = false;
        bool named_evanescent = true;
        for (const auto& m : modes) {
            if (m.propagating()) {
                ++propagating;
                fundamental_is_te10 = m.family == ModeFamily::TE && m.m == 1 && m.n == 0;
            }
            const bool is_te01 = m.family == ModeFamily::TE && m.m == 0 && m.n == 1;
            const bool is_te20 = m.family == ModeFamily::TE && m.m == 2 && m.n == 0;
            const bool is_tm11 = m.family == ModeFamily::TM && m.m == 1 && m.n == 1;
            if ((is_te01 || is_te20 || is_tm11) && m.propagating()) named_evanescent = false;
        }
        report(1,
               propagating == 1 && fundamental_is_te10 && named_evanescent &&
                   is_single_mode(guide),
               "only TE10 propagates in the (4,2) guide; TE01, TE20, TM11 evanescent");
    }

    // 2 -- gamma' at the guide center vs its closed form
    {
        const double closed = 3 * pi / (4.0 * 2.0 * std::sqrt(1.0 - pi * pi / 16.0));
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "gamma' at the guide center = %.9f gamma0 (closed form %.9f, rel. dev %.2e)",
                      gp, closed, std::abs(gp - closed) / closed);
        report(2, std::abs(gp - closed) / closed < 1e-6, buf);
    }

    // 3 -- numeric stationary machinery vs the closed-form single-atom solution
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double dev = oracle::max_deviation_vs_numeric(50);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "oracle equivalence: max rel. deviation %.2e on 50x50 grid in %.1f s",
                      dev, secs);
        report(3, dev < 1e-10 && secs < 5.0, buf);
    }

    const auto single = build_sigma(guide, {{{2.0, 1.0}, 0.0}});

    // 4 -- exact gate points at dz = 10
    {
        bool ok = true;
        const auto open = transport(single, ZeemanField{10.0}, 10.0);
        const auto closed = transport(single, ZeemanField{10.0}, 20.0);
        ok = ok && std::abs(open.T - 1.0) < 1e-9 && std::abs(closed.T) < 1e-9;
        for (int k = 0; k <= 50; ++k) {
            const auto res = transport(single, ZeemanField{10.0}, 25.0 * k / 50);
            ok = ok && std::abs(res.T + res.R - 1.0) < 1e-9;
        }
        report(4, ok, "single atom, dz = 10: T(10) = 1, T(20) = 0, R + T = 1 on the scan");
    }

    // 5 -- single-atom mirror and Lorentzian line at zero field
    {
        const auto pole = transport(single, ZeemanField{0.0}, 0.0);
        bool ok = pole.T < 1e-8 && std::abs(pole.R - 1.0) < 1e-8;
        for (int k = 1; k <= 40; ++k) {
            const double delta = 0.5 * k;
            const auto res = transport(single, ZeemanField{0.0}, delta);
            ok = ok && std::abs(res.T - delta * delta / (delta * delta + gp * gp)) < 1e-8;
        }
        const auto half = transport(single, ZeemanField{0.0}, gp);
        ok = ok && std::abs(half.T - 0.5) < 1e-8;
        report(5, ok, "zero field: perfect mirror at delta = 0, T = d^2/(d^2+g'^2), T(g') = 0.5");
    }

    // 6 -- incomplete decay at zero field
    {
        Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(3);
        b0(0) = 1.0;
        const auto M = effective_matrix(single, ZeemanField{0.0});
        std::vector<double> times;
        for (int k = 0; k <= 300; ++k) times.push_back(12.0 / gp * k / 300);
        const auto trace = evolve(M, b0, times);
        const bool pops_ok = std::abs(trace.populations(300, 0) - 0.25) < 1e-6 &&
                             std::abs(trace.populations(300, 2) - 0.25) < 1e-6;
        std::vector<double> ft, fy;
        for (int k = 0; k <= 300; ++k)
            if (times[k] <= 1.5 && trace.total[k] - 0.5 > 1e-12) {
                ft.push_back(times[k]);
                fy.push_back(trace.total[k] - 0.5);
            }
        const double rate = fit_rate(ft, fy);
        const double dev = std::max(std::abs(trace.populations(300, 0) - 0.25),
                                    std::abs(trace.populations(300, 2) - 0.25));
        char buf[160];
        std::snprintf(
            buf, sizeof(buf),
            "incomplete decay: |P(sigma-/+) - 0.25| = %.2e at g't = 12 (want < 1e-6), "
            "bright rate %.6f vs 2g' %.6f",
            dev, rate, 2 * gp);
        report(6, pops_ok && std::abs(rate - 2 * gp) / (2 * gp) < 1e-3, buf);
    }

    // 7 -- strong-field decay
    {
        Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(3);
        b0(0) = 1.0;
        const auto M = effective_matrix(single, ZeemanField{20.0});
        std::vector<double> times;
        for (int k = 0; k <= 300; ++k) times.push_back(0.01 * k);
        const auto trace = evolve(M, b0, times);
        double max_plus = 0.0;
        std::vector<double> ft, fy;
        for (int k = 0; k <= 300; ++k) {
            max_plus = std::max(max_plus, trace.populations(k, 2));
            if (times[k] >= 0.5 && times[k] <= 3.0) {
                ft.push_back(times[k]);
                fy.push_back(trace.populations(k, 0));
            }
        }
        const double rate = fit_rate(ft, fy);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "strong field: sigma- decay rate %.6f vs g' %.6f, max P(sigma+) %.4f",
                      rate, gp, max_plus);
        report(7, std::abs(rate - gp) / gp < 0.01 && max_plus < 0.01, buf);
    }

    // 8 -- switched-field photon protocol
    {
        Eigen::VectorXcd b0 = Eigen::VectorXcd::Zero(3);
        b0(0) = 1.0;
        const double hold = 10.0 / gp;
        const auto trace = simulate_protocol(single, {{0.0, hold}, {50.0, hold}}, b0, 0.01);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "photon protocol: stage emission %.6f / %.6f, final excitation %.2e",
                      trace.stage_emitted[0], trace.stage_emitted[1], trace.total.back());
        report(8,
               std::abs(trace.stage_emitted[0] - 0.5) < 1e-3 &&
                   std::abs(trace.stage_emitted[1] - 0.5) < 1e-3 && trace.total.back() < 1e-3,
               buf);
    }

    // 9 -- coupling-matrix properties
    {
        bool psd_ok = true;
        EnsembleSpec spec;
        for (int cfg = 0; cfg < 100 && psd_ok; ++cfg) {
            const auto sites = sample_sites(spec, guide, cfg);
            const auto sys = build_sigma(guide, sites);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.decay_matrix());
            const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
            psd_ok = es.info() == Eigen::Success && es.eigenvalues()(0) >= -1e-10 * scale;
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(single.decay_matrix());
        const bool spectrum_ok = std::abs(es1.eigenvalues()(0)) < 1e-9 &&
                                 std::abs(es1.eigenvalues()(1)) < 1e-9 &&
                                 std::abs(es1.eigenvalues()(2) - 2 * gp) < 1e-9;

        const auto open_sys = build_sigma(WaveguideGeometry(60.0, 60.0), {{{30.0, 30.0}, 0.0}});
        const double sigma_rate = -2.0 * open_sys.sigma()(0, 0).imag();
        const double pi_rate = -2.0 * open_sys.sigma()(1, 1).imag();
        const bool free_space_ok =
            std::abs(sigma_rate - 1.0) < 0.05 && std::abs(pi_rate - 1.0) < 0.05;

        std::printf("        [9a] decay matrix PSD over 100 random 12-atom configs: %s\n",
                    psd_ok ? "ok" : "violated");
        std::printf("        [9b] single-atom decay spectrum {0, 0, 2g'}: %s\n",
                    spectrum_ok ? "ok" : "violated");
        std::printf(
            "        [9c] 60x60 guide center rates: sigma %.4f, pi %.4f gamma0 (want 1 +- 5%%)\n",
            sigma_rate, pi_rate);
        report(9, psd_ok && spectrum_ok && free_space_ok,
               "coupling-matrix properties (PSD, single-atom spectrum, free-space recovery)");
    }

    // 10 -- ensemble gate curve
    {
        const auto t0 = std::chrono::steady_clock::now();
        EnsembleSpec spec;
        spec.n_configs = 100;
        std::vector<double> grid;
        for (int k = 0; k <= 150; ++k) grid.push_back(15.0 * k / 150);
        const auto scan = averaged_scan(spec, guide, grid, true, 10.0);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        int kmin = 0, kmax = 0;
        for (int k = 0; k <= 150; ++k) {
            if (scan[k].T_mean < scan[kmin].T_mean) kmin = k;
            if (scan[k].T_mean > scan[kmax].T_mean) kmax = k;
        }
        const bool ok = scan[kmin].T_mean < 0.1 && std::abs(grid[kmin] - 5.0) < 1.5 &&
                        scan[100].T_mean > 0.9 && kmax == 100 && secs < 120.0;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "ensemble gate: min T %.4f at dz %.2f, T(10) %.4f, max at dz %.2f, %.0f s",
                      scan[kmin].T_mean, grid[kmin], scan[100].T_mean, grid[kmax], secs);
        report(10, ok, buf);
    }

    // 11 -- bit-identical CSV from repeated seeded CLI runs
    {
        const std::string cli = WGQED_CLI_PATH;
        const std::string args =
            " gate --delta 10 --dz-scan 0:15:16 --atoms 4 --configs 3 --seed 21 > /dev/null";
        const int rc1 =
            std::system((cli + " --output /tmp/wgqed_acc_a.csv" + args).c_str());
        const int rc2 =
            std::system((cli + " --output /tmp/wgqed_acc_b.csv" + args).c_str());
        const std::string a = slurp("/tmp/wgqed_acc_a.csv");
        report(11, rc1 == 0 && rc2 == 0 && !a.empty() && a == slurp("/tmp/wgqed_acc_b.csv"),
               "identical seeds give bit-identical CSV output");
    }

    std::printf("%d/11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
