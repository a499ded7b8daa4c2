#include "wgqed/oracle.hpp"

#include <cmath>
#include <numbers>

namespace wgqed::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};
}  // namespace

double gamma_prime(const OracleInputs& in) {
    const double root = std::sqrt(1.0 - (kPi / in.ka) * (kPi / in.ka));
    const double s = std::sin(kPi * in.atom_x / in.ka);
    return 3.0 * kPi / (in.ka * in.kb * root) * s * s;
}

Amplitudes analytic_amplitudes(const OracleInputs& in) {
    const double gp = gamma_prime(in);
    const complexd half_gp(0.0, gp / 2.0);
    const complexd D =
        (in.delta + half_gp) * (in.delta - 2.0 * in.dz + half_gp) + (gp / 2.0) * (gp / 2.0);
    Amplitudes out;
    if (D == complexd(0.0)) {
        out.pole = true;
        out.b_minus = out.b_plus = 0.0;
        return out;
    }
    const complexd a1 = analytic_coefficients(in).A1;
    out.b_minus = a1 * (in.delta - 2.0 * in.dz) / D;
    out.b_plus = a1 * in.delta / D;
    return out;
}

Coefficients analytic_coefficients(const OracleInputs& in) {
    const double root = std::sqrt(1.0 - (kPi / in.ka) * (kPi / in.ka));
    const complexd pref = -kI * kPi / (in.ka * in.kb * root) * 1.5;  // C = 1
    const auto sin_x = [&](double x) { return std::sin(kPi * x / in.ka); };
    Coefficients out;
    out.A1 = pref * sin_x(in.atom_x) * sin_x(in.source_x) *
             std::exp(kI * std::abs(in.atom_z - in.source_z) * root);
    out.A2 = pref * sin_x(in.det_x) * sin_x(in.source_x) *
             std::exp(kI * std::abs(in.det_z - in.source_z) * root);
    out.A3 = kI * kPi / (in.ka * in.kb * root) * 1.5 * sin_x(in.atom_x) * sin_x(in.det_x) *
             std::exp(kI * std::abs(in.atom_z - in.det_z) * root);
    return out;
}

TransportResult analytic_transport(const OracleInputs& in) {
    TransportResult res;
    const auto amps = analytic_amplitudes(in);
    if (amps.pole) {
        // Limit of the closed forms at dz = 0, delta -> 0: full reflection.
        res.t_amp = 0.0;
        res.r_amp = 1.0;
        res.T = 0.0;
        res.R = 1.0;
        res.regularized = true;
        return res;
    }
    const auto coef = analytic_coefficients(in);
    const double gp = gamma_prime(in);
    const complexd sum = amps.b_minus + amps.b_plus;
    // Normalized forward amplitude: E_t / A2 with A3 A1 / A2 = i gamma'/2 for
    // detectors on the guide axis beyond the atom.
    res.t_amp = 1.0 - kI * (gp / 2.0) * sum / coef.A1;
    // Backward detector mirrored at the same distance before the atom.
    OracleInputs back = in;
    back.det_z = 2.0 * in.atom_z - in.det_z;
    const auto coef_back = analytic_coefficients(back);
    res.r_amp = -coef_back.A3 * sum / coef.A2;
    const double pt = std::norm(res.t_amp);
    const double pr = std::norm(res.r_amp);
    res.T = pt / (pt + pr);
    res.R = pr / (pt + pr);
    return res;
}

}  // namespace wgqed::oracle
