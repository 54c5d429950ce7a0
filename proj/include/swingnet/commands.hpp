#pragma once

// Subcommands behind the `swingnet` executable. Each writes a human-readable
// report to `out` and returns the process exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "swingnet/scenario.hpp"
#include "swingnet/sim.hpp"
#include "swingnet/spr.hpp"

namespace swingnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Empty `dampings` uses the scenario's own D values.
int cmd_classify(const Scenario& scenario, std::span<const double> dampings, std::ostream& out);

int cmd_spectrum(const Scenario& scenario, std::ostream& out);

struct SimulateOptions {
    std::vector<double> dampings;  ///< one CSV per value; empty = scenario D
    std::filesystem::path out_dir = ".";
    std::optional<Integrator> method;
    std::optional<std::uint64_t> seed;
};

/// Writes `<out_dir>/<name>_D<d>.csv` per damping value.
int cmd_simulate(const Scenario& scenario, const SimulateOptions& options, std::ostream& out);

/// Exit code 1 unless the verdict is StrictlyPositiveReal.
int cmd_spr(const LureSystem& sys, std::span<const double> omega_grid,
            const std::optional<std::filesystem::path>& csv_path, std::ostream& out);

struct ReplicateOptions {
    std::vector<double> dampings{1.0, 3.0, 6.0};        ///< network campaign
    std::vector<double> xis{1.0, 5.0, 10.0};            ///< disturbed single-grid campaign
    std::vector<double> single_dampings{1.0, 3.0, 5.0};  ///< D sweep at xi = 1
    std::filesystem::path out_dir = ".";
    std::optional<Integrator> method;
    std::optional<std::uint64_t> seed;
};

/// Both simulation campaigns: the network under D sweeps with periodic
/// reinitialization, then an isolated grid against the mains under the
/// sinusoidal measurement disturbance. Band excursions are reported, not
/// treated as failures.
int cmd_replicate(const Scenario& network, const ReplicateOptions& options, std::ostream& out);

/// The isolated grid of the disturbed campaign: one node, M = T = 1 to the
/// mains, 1000 steps of 0.01 s, rescaled.
Scenario single_grid_scenario(double damping, std::uint64_t seed);

}  // namespace swingnet
