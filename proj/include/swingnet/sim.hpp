#pragma once

// Network state-space assembly and fixed-step trajectory integration.
//
// State layout is [f_1 .. f_n, P_1 .. P_n]: frequencies first, then power
// flows, all in normalized units.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swingnet/graph.hpp"

namespace swingnet {

/// Affine map from the normalized unit interval onto a physical band
/// [nominal - span/2, nominal + span/2].
struct RescaleSpec {
    double f_nominal = 50.0;  ///< Hz
    double f_span = 0.1;      ///< Hz
    double p_nominal = 30.0;  ///< MWh
    double p_span = 2.0;      ///< MWh

    void validate() const;
    double frequency(double normalized) const { return f_nominal + f_span * (normalized - 0.5); }
    double power(double normalized) const { return p_nominal + p_span * (normalized - 0.5); }
};

enum class Integrator { ExplicitEuler, RK4 };

enum class SectorShape {
    Identity,               ///< psi(v) = v
    PaperSinusoid,          ///< psi(v, t) = v (1 + sin(xi f t)), gain in [0, 2]
    ClippedLinear,          ///< psi(v) = clamp(k v, -1, 1)
    PaperSinusoidAdditive,  ///< psi(v, t) = v + 1 + sin(xi f t); leaves the sector at v = 0
};

/// Time-varying measurement nonlinearity in the loop of each node.
struct SectorDisturbance {
    double k_tilde = 2.0;  ///< sector slope bound
    double xi = 1.0;       ///< periodicity factor
    SectorShape shape = SectorShape::PaperSinusoid;

    /// Checks k_tilde and xi, and that the shape fits inside the sector
    /// [0, k_tilde] (Identity needs k_tilde >= 1, PaperSinusoid >= 2).
    void validate() const;

    /// Measured value of `v` at time t; `own_frequency` is the frequency
    /// state of the node whose signal is measured.
    double apply(double v, double own_frequency, double t) const;

    /// psi (k v - psi) >= 0, the symmetric sector condition.
    bool in_sector(double v, double psi) const;
};

/// Exogenous frequency input omega(t) added to every node's swing equation.
using ExogenousInput = std::function<double(double)>;

struct SimConfig {
    double dt = 0.01;
    std::size_t steps = 500;
    Integrator method = Integrator::RK4;
    /// Seconds between uniform [0, 1] re-randomizations of the whole state.
    std::optional<double> reinit_period;
    std::uint64_t seed = 0;
    std::optional<RescaleSpec> rescale;
    ExogenousInput exogenous;  ///< empty means omega = 0

    void validate() const;
};

class NetworkSystem;

/// `mains` may be empty (no mains connection) or hold one nonnegative
/// coefficient per node.
NetworkSystem assemble(const Topology& topo, std::span<const double> inertias,
                       std::span<const double> dampings, std::span<const double> mains = {});

/// Assembled network. Immutable; build with assemble().
class NetworkSystem {
public:
    std::size_t size() const noexcept { return topology_.node_count(); }
    const Topology& topology() const noexcept { return topology_; }
    const std::vector<double>& inertias() const noexcept { return inertias_; }
    const std::vector<double>& dampings() const noexcept { return dampings_; }
    /// Per-node coupling to a fixed-frequency (f = 0) mains bus.
    const std::vector<double>& mains() const noexcept { return mains_; }
    /// L built from T plus Diag(mains).
    const Eigen::MatrixXd& laplacian() const noexcept { return laplacian_; }
    /// [[-Diag(D/M), Diag(1/M)], [-L, 0]]
    const Eigen::MatrixXd& state_matrix() const noexcept { return state_matrix_; }

    /// The common D_i/M_i, if every node shares it (relative 1e-12).
    std::optional<double> homogeneous_ratio() const;

private:
    friend NetworkSystem assemble(const Topology&, std::span<const double>, std::span<const double>,
                                  std::span<const double>);
    Topology topology_;
    std::vector<double> inertias_;
    std::vector<double> dampings_;
    std::vector<double> mains_;
    Eigen::MatrixXd laplacian_;
    Eigen::MatrixXd state_matrix_;
};

enum class Units { Normalized, Physical };

struct SimResult {
    std::vector<double> times;
    Eigen::MatrixXd frequencies;  ///< (steps + 1) x n
    Eigen::MatrixXd powers;       ///< (steps + 1) x n
    Units units = Units::Normalized;
    std::vector<std::size_t> reinit_steps;  ///< sample indices that were re-randomized

    std::size_t samples() const noexcept { return times.size(); }
};

/// States with a component beyond this magnitude are treated as divergent.
inline constexpr double kDivergenceLimit = 1e12;

/// Integrate from x0 (length 2n). Without a disturbance the flow is
/// x' = A x; with one, each node sees psi applied to its own frequency and
/// power while neighbour frequencies enter the coupling undisturbed.
/// Throws NonFiniteError on divergence.
SimResult simulate(const NetworkSystem& sys, const Eigen::VectorXd& x0, const SimConfig& cfg,
                   const std::optional<SectorDisturbance>& disturbance = std::nullopt);

/// 2n-vector with components uniform in [0, 1), deterministic in `seed`.
Eigen::VectorXd uniform_initial_state(std::size_t n, std::uint64_t seed);

struct PowerSample {
    double t = 0.0;
    double total_power = 0.0;  ///< 1^T P(t)
};

/// Total power per sample; requires a normalized result.
std::vector<PowerSample> energy_diagnostics(const SimResult& result, const NetworkSystem& sys);

/// `t,f_<label>...,P_<label>...` with 9 significant digits.
void write_csv(std::ostream& out, const SimResult& result, std::span<const std::string> labels);

std::string_view to_string(Integrator method);
std::string_view to_string(SectorShape shape);

}  // namespace swingnet
