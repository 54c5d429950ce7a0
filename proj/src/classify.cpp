#include "swingnet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "swingnet/error.hpp"

namespace swingnet {

namespace {

constexpr double kPlanarTolerance = 1e-12;
constexpr double kBoundTolerance = 1e-12;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void GridParams::validate() const {
    if (!positive_finite(inertia)) throw ValidationError("inertia M must be positive");
    if (!positive_finite(damping)) throw ValidationError("damping D must be positive");
    if (!positive_finite(sync)) throw ValidationError("synchronizing coefficient T must be positive");
}

Eigen::Matrix2d GridParams::state_matrix() const {
    Eigen::Matrix2d a;
    a << -damping / inertia, 1.0 / inertia, -sync, 0.0;
    return a;
}

std::array<Complex, 2> quadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // q has the sign of -b so that no cancellation occurs.
        const double q = -0.5 * (b + std::copysign(root, b));
        if (q == 0.0) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
        const double r1 = q;
        const double r2 = c / q;
        const double plus = std::max(r1, r2);
        const double minus = std::min(r1, r2);
        return {Complex{plus, 0.0}, Complex{minus, 0.0}};
    }
    const double re = -0.5 * b;
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex{re, im}, Complex{re, -im}};
}

TransientClass classify_single(const GridParams& p) {
    p.validate();
    TransientClass out;
    out.damping_threshold = 2.0 * std::sqrt(p.sync * p.inertia);
    out.eigenvalues = quadratic_roots(p.damping / p.inertia, p.sync / p.inertia);

    const double gap = p.damping - out.damping_threshold;
    if (std::abs(gap) <= kBoundaryTolerance * out.damping_threshold)
        out.kind = TransientKind::Boundary;
    else if (gap > 0.0)
        out.kind = TransientKind::AsymptoticallyStableNode;
    else
        out.kind = TransientKind::AsymptoticallyStableSpiral;
    return out;
}

PlanarClass classify_planar(const Eigen::Matrix2d& a) {
    const double tr = a.trace();
    const double det = a.determinant();
    if (std::abs(det) <= kPlanarTolerance) return PlanarClass::Degenerate;
    if (det < 0.0) return PlanarClass::Saddle;
    if (std::abs(tr) <= kPlanarTolerance) return PlanarClass::Degenerate;
    const double disc = tr * tr - 4.0 * det;
    if (std::abs(disc) <= kPlanarTolerance * std::max(1.0, tr * tr)) return PlanarClass::Degenerate;
    if (tr < 0.0) return disc > 0.0 ? PlanarClass::StableNode : PlanarClass::StableSpiral;
    return disc > 0.0 ? PlanarClass::UnstableNode : PlanarClass::UnstableSpiral;
}

DampingBounds damping_bounds(int d_max) {
    if (d_max < 1) throw ValidationError("d_max must be at least 1");
    return {std::sqrt(8.0 * d_max), std::sqrt(4.0 * d_max)};
}

NetworkClass network_modes(const Spectrum& spec, double damping, std::optional<int> d_max) {
    if (!positive_finite(damping)) throw ValidationError("damping D must be positive");
    NetworkClass out;
    out.per_mode.reserve(spec.eigenvalues.size());
    for (double mu : spec.eigenvalues) {
        const auto roots = quadratic_roots(damping, mu);
        NetworkMode mode{mu, roots[0], roots[1]};
        out.all_real_by_inspection = out.all_real_by_inspection && mode.real();
        out.per_mode.push_back(mode);
    }

    if (d_max) {
        out.d_max = *d_max;
        out.bounds = damping_bounds(*d_max);
        if (damping + kBoundTolerance >= out.bounds->no_oscillation)
            out.overall = NetworkVerdict::AllRealGuaranteed;
        else if (damping <= out.bounds->oscillation + kBoundTolerance)
            out.overall = NetworkVerdict::ComplexModeExists;
        else
            out.overall = NetworkVerdict::Indeterminate;
    } else {
        out.overall = out.all_real_by_inspection ? NetworkVerdict::AllRealGuaranteed
                                                 : NetworkVerdict::ComplexModeExists;
    }
    return out;
}

ConsensusPoint predict_consensus(std::span<const double> initial_power, double damping) {
    if (!positive_finite(damping)) throw ValidationError("damping D must be positive");
    if (initial_power.empty()) throw ValidationError("initial power vector is empty");
    const double mean = std::accumulate(initial_power.begin(), initial_power.end(), 0.0) /
                        static_cast<double>(initial_power.size());
    return {mean / damping, mean};
}

std::string_view to_string(TransientKind kind) {
    switch (kind) {
        case TransientKind::AsymptoticallyStableNode: return "AsymptoticallyStableNode";
        case TransientKind::AsymptoticallyStableSpiral: return "AsymptoticallyStableSpiral";
        case TransientKind::Boundary: return "Boundary";
    }
    return "?";
}

std::string_view to_string(PlanarClass kind) {
    switch (kind) {
        case PlanarClass::StableNode: return "StableNode";
        case PlanarClass::StableSpiral: return "StableSpiral";
        case PlanarClass::UnstableNode: return "UnstableNode";
        case PlanarClass::UnstableSpiral: return "UnstableSpiral";
        case PlanarClass::Saddle: return "Saddle";
        case PlanarClass::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string_view to_string(NetworkVerdict verdict) {
    switch (verdict) {
        case NetworkVerdict::AllRealGuaranteed: return "AllRealGuaranteed";
        case NetworkVerdict::ComplexModeExists: return "ComplexModeExists";
        case NetworkVerdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

}  // namespace swingnet
