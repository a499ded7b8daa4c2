// Command-line front end for the waveguide magneto-optics simulator. Talks to
// the core exclusively through the C API in wgqed.h. Tables go out as CSV
// with a JSON provenance header line; summaries as JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wgqed.h"

using nlohmann::json;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNumeric = 2;

[[noreturn]] void die(wgqed_status status) {
    std::cerr << "error: " << wgqed_last_error() << "\n";
    std::exit(status == WGQED_ERR_NUMERIC ? kExitNumeric : kExitInvalid);
}

void check(wgqed_status status) {
    if (status != WGQED_OK) die(status);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                std::cerr << "error: cannot open output file " << path << "\n";
                std::exit(kExitInvalid);
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

    void header(const json& config, const std::string& columns) {
        stream() << "# " << config.dump() << "\n" << columns << "\n";
    }

private:
    std::ofstream file_;
};

struct ScanGrid {
    std::vector<double> values;
};

ScanGrid parse_scan(const std::string& text) {
    double start = 0, stop = 0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1 ||
        !(in >> std::ws).eof()) {
        std::cerr << "error: scan must be start:stop:steps\n";
        std::exit(kExitInvalid);
    }
    ScanGrid grid;
    grid.values.reserve(steps);
    for (int k = 0; k < steps; ++k)
        grid.values.push_back(steps == 1 ? start : start + (stop - start) * k / (steps - 1));
    return grid;
}

struct SystemHandle {
    wgqed_system* sys = nullptr;
    ~SystemHandle() { wgqed_system_destroy(sys); }
};

struct TraceHandle {
    wgqed_trace* trace = nullptr;
    ~TraceHandle() { wgqed_trace_destroy(trace); }
};

void make_single_atom(double ka, double kb, double x, double y, SystemHandle& sys) {
    const double xyz[3] = {x, y, 0.0};
    check(wgqed_system_create(ka, kb, xyz, 1, nullptr, &sys.sys));
}

void dump_sigma(const SystemHandle& sys, const std::string& path) {
    const int dim = wgqed_system_dim(sys.sys);
    std::vector<double> re(dim * dim), im(dim * dim);
    check(wgqed_system_sigma(sys.sys, re.data(), im.data()));
    std::ofstream out(path);
    out << "row,col,re,im\n";
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            out << i << "," << j << "," << fmt(re[i * dim + j]) << "," << fmt(im[i * dim + j])
                << "\n";
}

struct EnsembleArgs {
    double density = 2e-3;
    double length = 750.0;
    int configs = 1;
    std::uint64_t seed = 0;
    int atoms = 0;
    bool single_atom = false;
    bool single_config = false;

    wgqed_ensemble_spec spec() const {
        wgqed_ensemble_spec s{};
        s.density = density;
        s.length = length;
        s.n_configs = single_config ? 1 : configs;
        s.seed = seed;
        s.single_atom = single_atom ? 1 : 0;
        s.n_atoms_override = atoms;
        return s;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--density", density, "Atomic density n*lambdabar^3");
        cmd->add_option("--length", length, "Sample length k0*L");
        cmd->add_option("--configs", configs, "Number of random configurations");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--atoms", atoms, "Fixed atom count (overrides density)");
        cmd->add_flag("--single-atom", single_atom, "Force a single randomly placed atom");
        cmd->add_flag("--single-config", single_config, "Use one configuration only");
    }

    json to_json() const {
        return {{"density", density},     {"length", length},
                {"configs", single_config ? 1 : configs},
                {"seed", seed},           {"atoms", atoms},
                {"single_atom", single_atom}};
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magneto-optical waveguide QED simulator"};
    app.require_subcommand(1);

    double ka = 4.0, kb = 2.0;
    std::string output, dump_path;
    app.add_option("--ka", ka, "Guide width k0*a")->capture_default_str();
    app.add_option("--kb", kb, "Guide height k0*b")->capture_default_str();
    app.add_option("--output", output, "Write the CSV table to this path");
    app.add_option("--dump-sigma", dump_path,
                   "Write the coupling matrix as CSV (fixed-atom runs only)");

    // modes
    auto* modes_cmd = app.add_subcommand("modes", "List TE/TM modes with cutoffs");
    int max_index = 60;
    modes_cmd->add_option("--max-index", max_index, "Largest mode index")->capture_default_str();

    // decay
    auto* decay_cmd = app.add_subcommand("decay", "Single-atom spontaneous decay trace");
    std::vector<double> pos{2.0, 1.0};
    double dz = 0.0, tmax = 6.0;
    int steps = 600;
    decay_cmd->add_option("--pos", pos, "Atom transverse position x,y")->delimiter(',');
    decay_cmd->add_option("--dz", dz, "Zeeman splitting in gamma0")->capture_default_str();
    decay_cmd->add_option("--tmax", tmax, "Final time in 1/gamma0")->capture_default_str();
    decay_cmd->add_option("--steps", steps, "Grid points")->capture_default_str();

    // photon
    auto* photon_cmd = app.add_subcommand("photon", "Switched-field single-photon protocol");
    std::string stages_path;
    double dt = 0.01;
    std::vector<double> photon_pos{2.0, 1.0};
    photon_cmd->add_option("--stages", stages_path, "JSON file: [{\"dz\":..,\"duration\":..}]")
        ->required();
    photon_cmd->add_option("--dt", dt, "Time step in 1/gamma0")->capture_default_str();
    photon_cmd->add_option("--pos", photon_pos, "Atom transverse position x,y")->delimiter(',');

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Transmission vs probe detuning");
    double spectrum_dz = 0.0;
    std::string delta_scan;
    std::vector<double> spectrum_pos;
    EnsembleArgs spectrum_ens;
    spectrum_cmd->add_option("--dz", spectrum_dz, "Zeeman splitting")->capture_default_str();
    spectrum_cmd->add_option("--delta-scan", delta_scan, "start:stop:steps")->required();
    spectrum_cmd->add_option("--pos", spectrum_pos, "Fixed atom position x,y")->delimiter(',');
    spectrum_ens.attach(spectrum_cmd);

    // gate
    auto* gate_cmd = app.add_subcommand("gate", "Transmission vs Zeeman splitting");
    double gate_delta = 10.0;
    std::string dz_scan;
    std::vector<double> gate_pos;
    EnsembleArgs gate_ens;
    gate_cmd->add_option("--delta", gate_delta, "Probe detuning")->capture_default_str();
    gate_cmd->add_option("--dz-scan", dz_scan, "start:stop:steps")->required();
    gate_cmd->add_option("--pos", gate_pos, "Fixed atom position x,y")->delimiter(',');
    gate_ens.attach(gate_cmd);

    // oracle-check
    auto* oracle_cmd = app.add_subcommand("oracle-check",
                                          "Numeric solver vs closed-form single-atom solution");
    int grid = 50;
    oracle_cmd->add_option("--grid", grid, "Grid points per axis")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    Output out(output);

    if (modes_cmd->parsed()) {
        int count = 0;
        check(wgqed_modes(ka, kb, max_index, nullptr, 0, &count));
        std::vector<wgqed_mode> table(count);
        check(wgqed_modes(ka, kb, max_index, table.data(), count, &count));
        out.header({{"task", "modes"}, {"ka", ka}, {"kb", kb}, {"max_index", max_index}},
                   "family,m,n,cutoff,axial_re,axial_im");
        for (const auto& mode : table)
            out.stream() << (mode.is_tm ? "TM" : "TE") << "," << mode.m << "," << mode.n << ","
                         << fmt(mode.cutoff) << "," << fmt(mode.axial_re) << ","
                         << fmt(mode.axial_im) << "\n";
        return 0;
    }

    if (decay_cmd->parsed()) {
        if (pos.size() != 2) {
            std::cerr << "error: --pos needs x,y\n";
            return kExitInvalid;
        }
        SystemHandle sys;
        make_single_atom(ka, kb, pos[0], pos[1], sys);
        if (!dump_path.empty()) dump_sigma(sys, dump_path);
        std::vector<double> times(steps);
        for (int k = 0; k < steps; ++k) times[k] = tmax * k / (steps - 1);
        const double b0[3] = {1.0, 0.0, 0.0};  // sigma- populated
        TraceHandle trace;
        check(wgqed_system_decay(sys.sys, dz, b0, nullptr, times.data(), steps, &trace.trace));
        const int nt = wgqed_trace_length(trace.trace);
        std::vector<double> t(nt), pops(nt * 3), dark(nt), total(nt);
        check(wgqed_trace_times(trace.trace, t.data()));
        check(wgqed_trace_populations(trace.trace, pops.data()));
        check(wgqed_trace_dark(trace.trace, dark.data()));
        check(wgqed_trace_total(trace.trace, total.data()));
        out.header({{"task", "decay"},
                    {"ka", ka},
                    {"kb", kb},
                    {"pos", pos},
                    {"dz", dz},
                    {"tmax", tmax},
                    {"steps", steps}},
                   "t,p_m_minus,p_m_0,p_m_plus,p_dark,emitted");
        for (int k = 0; k < nt; ++k)
            out.stream() << fmt(t[k]) << "," << fmt(pops[3 * k]) << "," << fmt(pops[3 * k + 1])
                         << "," << fmt(pops[3 * k + 2]) << "," << fmt(dark[k]) << ","
                         << fmt(1.0 - total[k]) << "\n";
        return 0;
    }

    if (photon_cmd->parsed()) {
        if (photon_pos.size() != 2) {
            std::cerr << "error: --pos needs x,y\n";
            return kExitInvalid;
        }
        std::ifstream stages_file(stages_path);
        if (!stages_file) {
            std::cerr << "error: cannot read stages file " << stages_path << "\n";
            return kExitInvalid;
        }
        json stages_json;
        try {
            stages_file >> stages_json;
        } catch (const json::exception& e) {
            std::cerr << "error: bad stages file: " << e.what() << "\n";
            return kExitInvalid;
        }
        std::vector<wgqed_stage> stages;
        if (!stages_json.is_array() || stages_json.empty()) {
            std::cerr << "error: stages file must be a nonempty JSON array\n";
            return kExitInvalid;
        }
        for (const auto& item : stages_json)
            stages.push_back({item.at("dz").get<double>(), item.at("duration").get<double>()});

        SystemHandle sys;
        make_single_atom(ka, kb, photon_pos[0], photon_pos[1], sys);
        if (!dump_path.empty()) dump_sigma(sys, dump_path);
        const double b0[3] = {1.0, 0.0, 0.0};
        TraceHandle trace;
        check(wgqed_system_protocol(sys.sys, stages.data(), static_cast<int>(stages.size()), dt,
                                    b0, nullptr, &trace.trace));
        const int nt = wgqed_trace_length(trace.trace);
        std::vector<double> t(nt), total(nt), flux(nt);
        check(wgqed_trace_times(trace.trace, t.data()));
        check(wgqed_trace_total(trace.trace, total.data()));
        check(wgqed_trace_flux(trace.trace, flux.data()));
        out.header({{"task", "photon"},
                    {"ka", ka},
                    {"kb", kb},
                    {"pos", photon_pos},
                    {"stages", stages_json},
                    {"dt", dt}},
                   "t,p_exc,flux");
        for (int k = 0; k < nt; ++k)
            out.stream() << fmt(t[k]) << "," << fmt(total[k]) << "," << fmt(flux[k]) << "\n";
        const int ns = wgqed_trace_n_stages(trace.trace);
        std::vector<double> emitted(ns);
        check(wgqed_trace_stage_emitted(trace.trace, emitted.data()));
        json summary{{"emitted_per_stage", emitted}, {"final_excitation", total.back()}};
        std::cout << summary.dump() << "\n";
        return 0;
    }

    const bool is_spectrum = spectrum_cmd->parsed();
    if (is_spectrum || gate_cmd->parsed()) {
        const auto grid_values = parse_scan(is_spectrum ? delta_scan : dz_scan).values;
        const auto& fixed_pos = is_spectrum ? spectrum_pos : gate_pos;
        const auto& ens = is_spectrum ? spectrum_ens : gate_ens;
        const double fixed = is_spectrum ? spectrum_dz : gate_delta;
        const int n = static_cast<int>(grid_values.size());
        std::vector<double> t_mean(n), t_stderr(n, 0.0), r_mean(n);

        json config{{"task", is_spectrum ? "spectrum" : "gate"},
                    {"ka", ka},
                    {"kb", kb},
                    {is_spectrum ? "dz" : "delta", fixed},
                    {"scan", is_spectrum ? delta_scan : dz_scan}};

        if (!fixed_pos.empty()) {
            if (fixed_pos.size() != 2) {
                std::cerr << "error: --pos needs x,y\n";
                return kExitInvalid;
            }
            SystemHandle sys;
            make_single_atom(ka, kb, fixed_pos[0], fixed_pos[1], sys);
            if (!dump_path.empty()) dump_sigma(sys, dump_path);
            for (int k = 0; k < n; ++k) {
                wgqed_transport res;
                const double dz_k = is_spectrum ? spectrum_dz : grid_values[k];
                const double delta_k = is_spectrum ? grid_values[k] : gate_delta;
                check(wgqed_system_transport(sys.sys, dz_k, delta_k, &res));
                t_mean[k] = res.T;
                r_mean[k] = res.R;
            }
            config["pos"] = fixed_pos;
        } else {
            const auto spec = ens.spec();
            check(wgqed_averaged_scan(ka, kb, &spec, grid_values.data(), n,
                                      is_spectrum ? 0 : 1, fixed, t_mean.data(),
                                      t_stderr.data(), r_mean.data()));
            config["ensemble"] = ens.to_json();
            if (!dump_path.empty()) {
                std::cerr << "error: --dump-sigma needs a fixed-atom run (--pos)\n";
                return kExitInvalid;
            }
        }

        if (is_spectrum) {
            out.header(config, "delta,T,R");
            for (int k = 0; k < n; ++k)
                out.stream() << fmt(grid_values[k]) << "," << fmt(t_mean[k]) << ","
                             << fmt(r_mean[k]) << "\n";
        } else {
            out.header(config, "dz,T_mean,T_stderr,R_mean");
            for (int k = 0; k < n; ++k)
                out.stream() << fmt(grid_values[k]) << "," << fmt(t_mean[k]) << ","
                             << fmt(t_stderr[k]) << "," << fmt(r_mean[k]) << "\n";
        }
        return 0;
    }

    if (oracle_cmd->parsed()) {
        double dev = 0.0;
        check(wgqed_oracle_check(grid, &dev));
        std::cout << "max relative deviation over " << grid << "x" << grid
                  << " grid: " << fmt(dev) << "\n";
        if (dev >= 1e-10) {
            std::cerr << "error: deviation exceeds 1e-10\n";
            return kExitNumeric;
        }
        return 0;
    }

    return kExitInvalid;
}
