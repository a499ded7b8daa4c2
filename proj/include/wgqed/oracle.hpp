#pragma once

#include <complex>

#include "wgqed/scattering.hpp"

namespace wgqed::oracle {

// Closed-form single-atom solution, kept deliberately free of any code shared
// with the coupling/scattering modules so that agreement between the two is an
// independent check.
struct OracleInputs {
    double delta = 0.0;
    double dz = 0.0;  // Zeeman splitting
    double ka = 4.0;
    double kb = 2.0;
    double atom_x = 2.0;
    double atom_z = 0.0;
    double source_x = 2.0;
    double source_z = -50.0;
    double det_x = 2.0;
    double det_z = 50.0;
};

struct Amplitudes {
    std::complex<double> b_minus;
    std::complex<double> b_plus;
    bool pole = false;  // D == 0 (only at dz = 0, delta = 0)
};

struct Coefficients {
    std::complex<double> A1;
    std::complex<double> A2;
    std::complex<double> A3;
};

double gamma_prime(const OracleInputs& in);

Amplitudes analytic_amplitudes(const OracleInputs& in);

Coefficients analytic_coefficients(const OracleInputs& in);

TransportResult analytic_transport(const OracleInputs& in);

// Max relative deviation between the numeric stationary machinery and the
// closed forms over a grid x grid (delta, dz) sweep at several atom
// positions. Lives in a separate translation unit so the closed forms above
// stay free of solver code.
double max_deviation_vs_numeric(int grid);

}  // namespace wgqed::oracle
