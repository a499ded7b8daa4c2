#include "wgqed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace wgqed {

namespace {
constexpr double kPi = std::numbers::pi;
}

WaveguideGeometry::WaveguideGeometry(double ka_, double kb_) : ka(ka_), kb(kb_) {
    if (!(ka > 0.0) || !(kb > 0.0))
        throw std::invalid_argument("waveguide cross-section must be positive");
    if (ka < kb)
        throw std::invalid_argument("convention requires ka >= kb (wide side along x)");
}

std::complex<double> axial_constant(double cutoff) {
    if (cutoff < 1.0) return {std::sqrt(1.0 - cutoff * cutoff), 0.0};
    return {0.0, std::sqrt(cutoff * cutoff - 1.0)};
}

std::vector<GuidedMode> enumerate_modes(const WaveguideGeometry& geom, int max_index) {
    if (max_index < 1) throw std::invalid_argument("max_index must be >= 1");
    std::vector<GuidedMode> modes;
    modes.reserve(2 * static_cast<std::size_t>(max_index + 1) * (max_index + 1));
    for (int m = 0; m <= max_index; ++m) {
        for (int n = 0; n <= max_index; ++n) {
            const double kx = m * kPi / geom.ka;
            const double ky = n * kPi / geom.kb;
            const double cutoff = std::hypot(kx, ky);
            if (m != 0 || n != 0)
                modes.push_back({ModeFamily::TE, m, n, cutoff, axial_constant(cutoff)});
            if (m >= 1 && n >= 1)
                modes.push_back({ModeFamily::TM, m, n, cutoff, axial_constant(cutoff)});
        }
    }
    std::sort(modes.begin(), modes.end(), [](const GuidedMode& a, const GuidedMode& b) {
        return std::tie(a.cutoff, a.family, a.m, a.n) < std::tie(b.cutoff, b.family, b.m, b.n);
    });
    return modes;
}

bool is_single_mode(const WaveguideGeometry& geom) {
    // Only indices 1..2 can matter: any propagating mode needs cutoff < 1.
    int count = 0;
    const int cap = static_cast<int>(std::max(geom.ka, geom.kb) / kPi) + 1;
    for (const auto& mode : enumerate_modes(geom, std::max(1, cap)))
        if (mode.propagating()) ++count;
    return count == 1;
}

Eigen::Vector3d mode_profile(const GuidedMode& mode, const WaveguideGeometry& geom,
                             const TransversePoint& p) {
    if (!(p.x > 0.0 && p.x < geom.ka && p.y > 0.0 && p.y < geom.kb))
        throw std::domain_error("point must lie strictly inside the cross-section");
    const double kx = mode.m * kPi / geom.ka;
    const double ky = mode.n * kPi / geom.kb;
    const double sx = std::sin(kx * p.x), cx = std::cos(kx * p.x);
    const double sy = std::sin(ky * p.y), cy = std::cos(ky * p.y);
    if (mode.family == ModeFamily::TE) return {ky * cx * sy, -kx * sx * cy, 0.0};
    return {kx * cx * sy, ky * sx * cy, mode.cutoff * mode.cutoff * sx * sy};
}

}  // namespace wgqed
