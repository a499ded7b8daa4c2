#include "wgqed.h"

#include <cstring>
#include <exception>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgqed/coupling.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/ensemble.hpp"
#include "wgqed/oracle.hpp"
#include "wgqed/scattering.hpp"

namespace {

thread_local std::string g_last_error;

wgqed_status fail(wgqed_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
wgqed_status guarded(Fn&& fn) {
    try {
        fn();
        return WGQED_OK;
    } catch (const std::invalid_argument& e) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(WGQED_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(WGQED_ERR_NUMERIC, e.what());
    }
}

wgqed::CouplingOptions to_options(const wgqed_coupling_options* opts) {
    wgqed::CouplingOptions out;
    if (opts) {
        if (opts->max_index > 0) out.max_index = opts->max_index;
        if (opts->min_axial_separation > 0) out.min_axial_separation = opts->min_axial_separation;
    }
    return out;
}

Eigen::VectorXcd to_state(const double* re, const double* im, int dim) {
    if (!re) throw std::invalid_argument("initial state must not be null");
    Eigen::VectorXcd b0(dim);
    for (int k = 0; k < dim; ++k) b0(k) = {re[k], im ? im[k] : 0.0};
    return b0;
}

}  // namespace

struct wgqed_system {
    wgqed::CouplingMatrix coupling;
};

struct wgqed_trace {
    wgqed::DecayTrace trace;
};

extern "C" {

const char* wgqed_last_error(void) { return g_last_error.c_str(); }

wgqed_status wgqed_modes(double ka, double kb, int max_index, wgqed_mode* out, int capacity,
                         int* count) {
    return guarded([&] {
        const auto modes = wgqed::enumerate_modes(wgqed::WaveguideGeometry(ka, kb), max_index);
        if (count) *count = static_cast<int>(modes.size());
        if (!out) return;
        const int n = std::min<int>(capacity, static_cast<int>(modes.size()));
        for (int k = 0; k < n; ++k) {
            out[k].is_tm = modes[k].family == wgqed::ModeFamily::TM ? 1 : 0;
            out[k].m = modes[k].m;
            out[k].n = modes[k].n;
            out[k].cutoff = modes[k].cutoff;
            out[k].axial_re = modes[k].axial.real();
            out[k].axial_im = modes[k].axial.imag();
        }
    });
}

wgqed_status wgqed_is_single_mode(double ka, double kb, int* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out must not be null");
        *out = wgqed::is_single_mode(wgqed::WaveguideGeometry(ka, kb)) ? 1 : 0;
    });
}

wgqed_status wgqed_gamma_prime(double ka, double kb, double xi_x, double* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out must not be null");
        *out = wgqed::gamma_prime(wgqed::WaveguideGeometry(ka, kb), xi_x);
    });
}

wgqed_status wgqed_system_create(double ka, double kb, const double* sites_xyz, int n_atoms,
                                 const wgqed_coupling_options* opts, wgqed_system** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out must not be null");
        if (n_atoms < 0 || (n_atoms > 0 && !sites_xyz))
            throw std::invalid_argument("bad site array");
        const wgqed::WaveguideGeometry geom(ka, kb);
        std::vector<wgqed::AtomSite> sites;
        sites.reserve(n_atoms);
        for (int i = 0; i < n_atoms; ++i)
            sites.push_back(
                {{sites_xyz[3 * i], sites_xyz[3 * i + 1]}, sites_xyz[3 * i + 2]});
        auto sys = std::make_unique<wgqed_system>(
            wgqed_system{wgqed::build_sigma(geom, sites, to_options(opts))});
        *out = sys.release();
    });
}

void wgqed_system_destroy(wgqed_system* sys) { delete sys; }

int wgqed_system_dim(const wgqed_system* sys) { return sys ? sys->coupling.dim() : 0; }

wgqed_status wgqed_system_sigma(const wgqed_system* sys, double* re, double* im) {
    return guarded([&] {
        if (!sys || !re || !im) throw std::invalid_argument("null argument");
        const auto& s = sys->coupling.sigma();
        for (int i = 0; i < s.rows(); ++i)
            for (int j = 0; j < s.cols(); ++j) {
                re[i * s.cols() + j] = s(i, j).real();
                im[i * s.cols() + j] = s(i, j).imag();
            }
    });
}

wgqed_status wgqed_system_decay(const wgqed_system* sys, double dz, const double* b0_re,
                                const double* b0_im, const double* times, int n_times,
                                wgqed_trace** out) {
    return guarded([&] {
        if (!sys || !out || !times || n_times < 1) throw std::invalid_argument("null argument");
        const auto M = wgqed::effective_matrix(sys->coupling, wgqed::ZeemanField{dz});
        const auto b0 = to_state(b0_re, b0_im, sys->coupling.dim());
        auto trace = std::make_unique<wgqed_trace>(
            wgqed_trace{wgqed::evolve(M, b0, std::vector<double>(times, times + n_times))});
        *out = trace.release();
    });
}

wgqed_status wgqed_system_protocol(const wgqed_system* sys, const wgqed_stage* stages,
                                   int n_stages, double dt, const double* b0_re,
                                   const double* b0_im, wgqed_trace** out) {
    return guarded([&] {
        if (!sys || !out || !stages || n_stages < 1) throw std::invalid_argument("null argument");
        std::vector<wgqed::ProtocolStage> st;
        st.reserve(n_stages);
        for (int k = 0; k < n_stages; ++k) st.push_back({stages[k].dz, stages[k].duration});
        const auto b0 = to_state(b0_re, b0_im, sys->coupling.dim());
        auto trace = std::make_unique<wgqed_trace>(
            wgqed_trace{wgqed::simulate_protocol(sys->coupling, st, b0, dt)});
        *out = trace.release();
    });
}

void wgqed_trace_destroy(wgqed_trace* trace) { delete trace; }

int wgqed_trace_length(const wgqed_trace* trace) {
    return trace ? static_cast<int>(trace->trace.times.size()) : 0;
}

int wgqed_trace_n_stages(const wgqed_trace* trace) {
    return trace ? static_cast<int>(trace->trace.stage_emitted.size()) : 0;
}

#define WGQED_TRACE_COPY(name, member)                                                  \
    wgqed_status name(const wgqed_trace* trace, double* out) {                          \
        return guarded([&] {                                                            \
            if (!trace || !out) throw std::invalid_argument("null argument");           \
            std::memcpy(out, trace->trace.member.data(),                                \
                        trace->trace.member.size() * sizeof(double));                   \
        });                                                                             \
    }

WGQED_TRACE_COPY(wgqed_trace_times, times)
WGQED_TRACE_COPY(wgqed_trace_total, total)
WGQED_TRACE_COPY(wgqed_trace_dark, dark)
WGQED_TRACE_COPY(wgqed_trace_flux, flux)
WGQED_TRACE_COPY(wgqed_trace_stage_emitted, stage_emitted)

#undef WGQED_TRACE_COPY

wgqed_status wgqed_trace_populations(const wgqed_trace* trace, double* out) {
    return guarded([&] {
        if (!trace || !out) throw std::invalid_argument("null argument");
        const auto& p = trace->trace.populations;
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j) out[i * p.cols() + j] = p(i, j);
    });
}

wgqed_status wgqed_system_transport(const wgqed_system* sys, double dz, double delta,
                                    wgqed_transport* out) {
    return guarded([&] {
        if (!sys || !out) throw std::invalid_argument("null argument");
        const auto res = wgqed::transport(sys->coupling, wgqed::ZeemanField{dz}, delta);
        out->t_re = res.t_amp.real();
        out->t_im = res.t_amp.imag();
        out->r_re = res.r_amp.real();
        out->r_im = res.r_amp.imag();
        out->T = res.T;
        out->R = res.R;
        out->regularized = res.regularized ? 1 : 0;
    });
}

wgqed_status wgqed_averaged_scan(double ka, double kb, const wgqed_ensemble_spec* spec,
                                 const double* grid, int n_grid, int scan_is_dz, double fixed,
                                 double* T_mean, double* T_stderr, double* R_mean) {
    return guarded([&] {
        if (!spec || !grid || n_grid < 1 || !T_mean) throw std::invalid_argument("null argument");
        wgqed::EnsembleSpec es;
        es.density = spec->density;
        es.length = spec->length;
        es.n_configs = spec->n_configs;
        es.seed = spec->seed;
        if (spec->min_axial_sep > 0) es.min_axial_sep = spec->min_axial_sep;
        es.single_atom = spec->single_atom != 0;
        es.n_atoms_override = spec->n_atoms_override;
        if (spec->max_index > 0) es.max_index = spec->max_index;
        const auto rows =
            wgqed::averaged_scan(es, wgqed::WaveguideGeometry(ka, kb),
                                 std::vector<double>(grid, grid + n_grid), scan_is_dz != 0, fixed);
        for (int k = 0; k < n_grid; ++k) {
            T_mean[k] = rows[k].T_mean;
            if (T_stderr) T_stderr[k] = rows[k].T_stderr;
            if (R_mean) R_mean[k] = rows[k].R_mean;
        }
    });
}

wgqed_status wgqed_oracle_check(int grid, double* max_deviation) {
    return guarded([&] {
        if (!max_deviation) throw std::invalid_argument("out must not be null");
        *max_deviation = wgqed::oracle::max_deviation_vs_numeric(grid);
    });
}

}  // extern "C"
