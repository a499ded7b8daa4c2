#include "wgqed/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace wgqed {

namespace {

using complexd = std::complex<double>;
constexpr complexd kI{0.0, 1.0};

void fill_trace(DecayTrace& trace) {
    const int nt = static_cast<int>(trace.times.size());
    const int dim = static_cast<int>(trace.amplitudes.cols());
    trace.populations = trace.amplitudes.cwiseAbs2();
    trace.total.resize(nt);
    trace.emitted.resize(nt);
    trace.dark.resize(nt);
    for (int k = 0; k < nt; ++k) {
        trace.total[k] = trace.populations.row(k).sum();
        trace.emitted[k] = 1.0 - trace.total[k];
        trace.dark[k] =
            dim >= 3 ? dark_fraction(trace.amplitudes.row(k).transpose(), 0) : 0.0;
    }
}

}  // namespace

Eigen::MatrixXcd effective_matrix(const CouplingMatrix& sigma, const ZeemanField& field) {
    Eigen::MatrixXcd M = sigma.sigma();
    for (int i = 0; i < sigma.n_atoms(); ++i)
        for (int a = 0; a < 3; ++a)
            M(3 * i + a, 3 * i + a) += kSublevels[a] * field.dz;
    return M;
}

DecayTrace evolve(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& b0,
                  const std::vector<double>& times) {
    if (b0.size() != M.rows()) throw std::invalid_argument("initial state has wrong dimension");
    if (b0.norm() > 1.0 + 1e-12) throw std::invalid_argument("initial state norm exceeds 1");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < 0.0) throw std::invalid_argument("times must be nonnegative");
        if (k > 0 && times[k] < times[k - 1])
            throw std::invalid_argument("times must be ascending");
    }

    DecayTrace trace;
    trace.times = times;
    const int nt = static_cast<int>(times.size());
    const int dim = static_cast<int>(M.rows());
    trace.amplitudes.resize(nt, dim);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    bool use_eig = es.info() == Eigen::Success;
    Eigen::VectorXcd coeffs;
    if (use_eig) {
        const auto& V = es.eigenvectors();
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
        // Rough condition estimate from the pivot spread; a defective M shows
        // up as a nearly singular eigenvector matrix.
        const double pmax = std::abs(lu.matrixLU()(0, 0));
        const double pmin = std::abs(lu.matrixLU()(dim - 1, dim - 1));
        if (!lu.isInvertible() || pmin == 0.0 || pmax / pmin > 1e8) {
            use_eig = false;
        } else {
            coeffs = lu.solve(b0);
        }
    }

    if (use_eig) {
        trace.method = EvolveMethod::Eigendecomposition;
        const auto& V = es.eigenvectors();
        const auto& lambda = es.eigenvalues();
        for (int k = 0; k < nt; ++k) {
            Eigen::VectorXcd phase(dim);
            for (int j = 0; j < dim; ++j) phase(j) = std::exp(-kI * lambda(j) * times[k]);
            trace.amplitudes.row(k) = (V * phase.cwiseProduct(coeffs).matrix()).transpose();
        }
    } else {
        trace.method = EvolveMethod::MatrixExponential;
        Eigen::VectorXcd b = b0;
        double t_prev = 0.0;
        for (int k = 0; k < nt; ++k) {
            const double dt = times[k] - t_prev;
            if (dt > 0.0) b = ((-kI * dt) * M).exp() * b;
            t_prev = times[k];
            trace.amplitudes.row(k) = b.transpose();
        }
    }

    fill_trace(trace);
    return trace;
}

double dark_fraction(const Eigen::VectorXcd& b, int atom) {
    if (atom < 0 || 3 * atom + 2 >= b.size()) throw std::invalid_argument("bad atom index");
    const complexd x = (b(3 * atom) - b(3 * atom + 2)) / std::sqrt(2.0);
    return std::norm(x);
}

DecayTrace simulate_protocol(const CouplingMatrix& sigma, const std::vector<ProtocolStage>& stages,
                             const Eigen::VectorXcd& b0, double dt) {
    if (stages.empty()) throw std::invalid_argument("protocol needs at least one stage");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    for (const auto& stage : stages)
        if (!(stage.duration >= 0.0) || !std::isfinite(stage.duration))
            throw std::invalid_argument("stage durations must be finite and nonnegative");

    DecayTrace trace;
    const int dim = static_cast<int>(b0.size());
    std::vector<Eigen::VectorXcd> amps{b0};
    trace.times.push_back(0.0);
    trace.method = EvolveMethod::Eigendecomposition;

    Eigen::VectorXcd b = b0;
    double t0 = 0.0;
    for (const auto& stage : stages) {
        const double start_exc = b.squaredNorm();
        if (stage.duration > 0.0) {
            const int steps = std::max(1, static_cast<int>(std::ceil(stage.duration / dt)));
            std::vector<double> local(steps);
            for (int k = 1; k <= steps; ++k) local[k - 1] = stage.duration * k / steps;
            const auto M = effective_matrix(sigma, ZeemanField{stage.dz});
            DecayTrace piece = evolve(M, b, local);
            if (piece.method == EvolveMethod::MatrixExponential)
                trace.method = EvolveMethod::MatrixExponential;
            for (int k = 0; k < steps; ++k) {
                trace.times.push_back(t0 + local[k]);
                amps.push_back(piece.amplitudes.row(k).transpose());
            }
            b = amps.back();
            t0 += stage.duration;
        }
        trace.stage_emitted.push_back(start_exc - b.squaredNorm());
    }

    const int nt = static_cast<int>(trace.times.size());
    trace.amplitudes.resize(nt, dim);
    for (int k = 0; k < nt; ++k) trace.amplitudes.row(k) = amps[k].transpose();
    fill_trace(trace);

    trace.flux.assign(nt, 0.0);
    for (int k = 1; k < nt; ++k) {
        const double h = trace.times[k] - trace.times[k - 1];
        trace.flux[k] = h > 0.0 ? (trace.total[k - 1] - trace.total[k]) / h : 0.0;
    }
    if (nt > 1) trace.flux[0] = trace.flux[1];
    return trace;
}

}  // namespace wgqed
