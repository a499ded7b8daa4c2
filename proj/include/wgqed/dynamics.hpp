#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wgqed/coupling.hpp"

namespace wgqed {

struct ZeemanField {
    double dz = 0.0;  // Zeeman splitting in gamma0 units; sublevel m shifts by m*dz
};

struct ProtocolStage {
    double dz;
    double duration;  // in 1/gamma0, >= 0
};

enum class EvolveMethod { Eigendecomposition, MatrixExponential };

struct DecayTrace {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes;   // nt x 3N
    Eigen::MatrixXd populations;   // nt x 3N, |b|^2
    std::vector<double> total;     // P_exc(t)
    std::vector<double> emitted;   // 1 - P_exc(t)
    std::vector<double> dark;      // |<X|b>|^2 of atom 0
    std::vector<double> flux;      // -dP_exc/dt on the grid (protocol runs)
    std::vector<double> stage_emitted;
    EvolveMethod method = EvolveMethod::Eigendecomposition;
};

// M = diag(m_e * dz) + Sigma, in the frame rotating at omega0.
Eigen::MatrixXcd effective_matrix(const CouplingMatrix& sigma, const ZeemanField& field);

// b(t) = exp(-i M t) b0 via eigendecomposition; falls back to a dense matrix
// exponential per step when the eigenbasis is ill-conditioned.
DecayTrace evolve(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& b0,
                  const std::vector<double>& times);

// |(b_{sigma-} - b_{sigma+})/sqrt(2)|^2 for the given atom.
double dark_fraction(const Eigen::VectorXcd& b, int atom);

// Piecewise evolution with instantaneous field switching between stages.
DecayTrace simulate_protocol(const CouplingMatrix& sigma, const std::vector<ProtocolStage>& stages,
                             const Eigen::VectorXcd& b0, double dt);

}  // namespace wgqed
