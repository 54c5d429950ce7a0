#pragma once

// Closed-form transient classification for a single micro-grid and for
// homogeneous networks of them.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swingnet/graph.hpp"

namespace swingnet {

using Complex = std::complex<double>;

/// Physical constants of one micro-grid tied to a neighbour (or the mains).
struct GridParams {
    double inertia = 1.0;  ///< M
    double damping = 1.0;  ///< D
    double sync = 1.0;     ///< T

    /// Throws ValidationError unless all three are positive and finite.
    void validate() const;

    /// The 2x2 state matrix [[-D/M, 1/M], [-T, 0]].
    Eigen::Matrix2d state_matrix() const;
};

enum class TransientKind { AsymptoticallyStableNode, AsymptoticallyStableSpiral, Boundary };

struct TransientClass {
    TransientKind kind{};
    /// eigenvalues[0] is the "+" root, eigenvalues[1] the "-" root.
    std::array<Complex, 2> eigenvalues{};
    double damping_threshold = 0.0;  ///< 2 sqrt(T M)
};

/// Relative band around a threshold that reports Boundary/Degenerate.
inline constexpr double kBoundaryTolerance = 1e-9;

TransientClass classify_single(const GridParams& p);

enum class PlanarClass { StableNode, StableSpiral, UnstableNode, UnstableSpiral, Saddle, Degenerate };

/// Placement of a planar linear system in the trace-determinant plane.
PlanarClass classify_planar(const Eigen::Matrix2d& a);

/// Roots of lambda^2 + b lambda + c = 0 for real b, c. Real roots are
/// computed in the cancellation-free form; a negative discriminant gives
/// the conjugate pair. Element 0 carries the "+sqrt" root.
std::array<Complex, 2> quadratic_roots(double b, double c);

struct DampingBounds {
    double no_oscillation = 0.0;  ///< sqrt(8 d_max): all modes real at or above
    double oscillation = 0.0;     ///< sqrt(4 d_max): some mode complex at or below
};

DampingBounds damping_bounds(int d_max);

enum class NetworkVerdict { AllRealGuaranteed, ComplexModeExists, Indeterminate };

struct NetworkMode {
    double laplacian_eigenvalue = 0.0;  ///< mu~_i (eigenvalue of L, not -L)
    Complex lambda_plus;
    Complex lambda_minus;

    double discriminant(double damping) const {
        return damping * damping - 4.0 * laplacian_eigenvalue;
    }
    bool real() const { return lambda_plus.imag() == 0.0 && lambda_minus.imag() == 0.0; }
};

struct NetworkClass {
    std::vector<NetworkMode> per_mode;
    /// From the degree bounds when d_max was supplied, otherwise from the
    /// discriminants.
    NetworkVerdict overall{};
    /// Exact per-mode answer, always computed.
    bool all_real_by_inspection = true;
    std::optional<DampingBounds> bounds;
    int d_max = 0;  ///< 0 when not supplied
};

/// Network modes lambda^2 + D lambda + mu~_i = 0 for every Laplacian
/// eigenvalue. `damping` is D (or the common ratio D_i/M_i when the
/// spectrum comes from the inertia-weighted Laplacian).
NetworkClass network_modes(const Spectrum& spec, double damping,
                           std::optional<int> d_max = std::nullopt);

struct ConsensusPoint {
    double frequency = 0.0;  ///< f*
    double power = 0.0;      ///< P*
};

/// Equilibrium of the homogeneous M = T = 1 network: total power is
/// conserved, so P* = mean(P(0)) and f* = P*/D.
ConsensusPoint predict_consensus(std::span<const double> initial_power, double damping);

std::string_view to_string(TransientKind kind);
std::string_view to_string(PlanarClass kind);
std::string_view to_string(NetworkVerdict verdict);

}  // namespace swingnet
