/* C API for the waveguide magneto-optics simulator.
 *
 * All quantities use the fixed unit system of the core: lengths premultiplied
 * by the resonant wavenumber k0, rates and detunings in units of the free-
 * space linewidth gamma0, times in 1/gamma0.
 *
 * Functions return WGQED_OK on success; on failure wgqed_last_error() gives a
 * thread-local description of the most recent error.
 */
#ifndef WGQED_H
#define WGQED_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wgqed_status {
    WGQED_OK = 0,
    WGQED_ERR_INVALID_ARGUMENT = 1,
    WGQED_ERR_DOMAIN = 2,
    WGQED_ERR_NUMERIC = 3
} wgqed_status;

const char* wgqed_last_error(void);

/* ---- modes ---------------------------------------------------------- */

typedef struct wgqed_mode {
    int is_tm; /* 0 = TE, 1 = TM */
    int m;
    int n;
    double cutoff;
    double axial_re;
    double axial_im;
} wgqed_mode;

/* Fills up to capacity modes sorted by cutoff; *count receives the total
 * number available for this max_index. */
wgqed_status wgqed_modes(double ka, double kb, int max_index, wgqed_mode* out, int capacity,
                         int* count);

wgqed_status wgqed_is_single_mode(double ka, double kb, int* out);

wgqed_status wgqed_gamma_prime(double ka, double kb, double xi_x, double* out);

/* ---- atomic system (geometry + sites + coupling matrix) -------------- */

typedef struct wgqed_system wgqed_system;

typedef struct wgqed_coupling_options {
    int max_index;               /* <= 0 selects the default (60) */
    double min_axial_separation; /* <= 0 selects the default (0.05) */
} wgqed_coupling_options;

/* sites_xyz holds x0,y0,z0, x1,y1,z1, ... (3*n_atoms doubles). */
wgqed_status wgqed_system_create(double ka, double kb, const double* sites_xyz, int n_atoms,
                                 const wgqed_coupling_options* opts, wgqed_system** out);

void wgqed_system_destroy(wgqed_system* sys);

int wgqed_system_dim(const wgqed_system* sys); /* 3 * n_atoms */

/* Row-major dim x dim matrix split into real and imaginary parts. */
wgqed_status wgqed_system_sigma(const wgqed_system* sys, double* re, double* im);

/* ---- time-domain evolution ------------------------------------------ */

typedef struct wgqed_trace wgqed_trace;

typedef struct wgqed_stage {
    double dz;
    double duration;
} wgqed_stage;

/* b0_im may be NULL for a real initial state. */
wgqed_status wgqed_system_decay(const wgqed_system* sys, double dz, const double* b0_re,
                                const double* b0_im, const double* times, int n_times,
                                wgqed_trace** out);

wgqed_status wgqed_system_protocol(const wgqed_system* sys, const wgqed_stage* stages,
                                   int n_stages, double dt, const double* b0_re,
                                   const double* b0_im, wgqed_trace** out);

void wgqed_trace_destroy(wgqed_trace* trace);
int wgqed_trace_length(const wgqed_trace* trace);
int wgqed_trace_n_stages(const wgqed_trace* trace);
wgqed_status wgqed_trace_times(const wgqed_trace* trace, double* out);
/* length x dim, row-major */
wgqed_status wgqed_trace_populations(const wgqed_trace* trace, double* out);
wgqed_status wgqed_trace_total(const wgqed_trace* trace, double* out);
wgqed_status wgqed_trace_dark(const wgqed_trace* trace, double* out);
wgqed_status wgqed_trace_flux(const wgqed_trace* trace, double* out);
wgqed_status wgqed_trace_stage_emitted(const wgqed_trace* trace, double* out);

/* ---- stationary transport ------------------------------------------- */

typedef struct wgqed_transport {
    double t_re, t_im; /* transmitted TE10 amplitude, incident included */
    double r_re, r_im; /* reflected amplitude, scattered only */
    double T, R;
    int regularized;
} wgqed_transport;

wgqed_status wgqed_system_transport(const wgqed_system* sys, double dz, double delta,
                                    wgqed_transport* out);

/* ---- random-ensemble averaging --------------------------------------- */

typedef struct wgqed_ensemble_spec {
    double density; /* n * lambdabar^3 */
    double length;  /* k0 * L */
    int n_configs;
    uint64_t seed;
    double min_axial_sep; /* <= 0 selects the default (0.05) */
    int single_atom;      /* force N = 1 */
    int n_atoms_override; /* > 0 replaces the density-implied count */
    int max_index;        /* <= 0 selects the default (60) */
} wgqed_ensemble_spec;

/* scan_is_dz != 0: grid scans the Zeeman splitting at fixed detuning;
 * otherwise the detuning at fixed Zeeman splitting. Output arrays have one
 * entry per grid point. */
wgqed_status wgqed_averaged_scan(double ka, double kb, const wgqed_ensemble_spec* spec,
                                 const double* grid, int n_grid, int scan_is_dz, double fixed,
                                 double* T_mean, double* T_stderr, double* R_mean);

/* ---- closed-form single-atom oracle ---------------------------------- */

/* Max relative deviation between the numeric stationary solver and the
 * closed-form single-atom solution over a grid x grid (delta, dz) sweep at
 * several atom positions. */
wgqed_status wgqed_oracle_check(int grid, double* max_deviation);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WGQED_H */
