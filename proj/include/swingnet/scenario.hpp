#pragma once

// Scenario documents: a JSON file bundling topology, per-node parameters,
// simulation settings, disturbance and rescaling.
//
//   {
//     "name": "...",                                   optional
//     "topology": {
//       "nodes": ["A", "B", ...]   or   "node_count": n,
//       "edges": [{"from": "A", "to": "B", "T": 1.0}, ["A", "C"], ...]
//     },
//     "params": {"M": 1 | [...], "D": 1 | [...], "T": 1, "mains": 0 | [...]},
//     "sim": {"dt", "steps", "method": "rk4"|"euler", "reinit_period",
//             "seed", "initial": "random"|"zero"|{"f": [...], "P": [...]}},
//     "disturbance": {"shape": "identity"|"sinusoid"|"clipped"|"sinusoid-additive",
//                     "k_tilde", "xi"},
//     "rescale": {"f_nominal", "f_span", "p_nominal", "p_span"}
//   }
//
// Defaults: M = 1, T = 1, no mains, dt = 0.01, steps = 500, RK4, random
// initial state, seed 0, no disturbance, no rescaling. D is required.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swingnet/graph.hpp"
#include "swingnet/sim.hpp"

namespace swingnet {

struct InitialState {
    enum class Kind { Random, Zero, Explicit };
    Kind kind = Kind::Random;
    Eigen::VectorXd values;  ///< Explicit only: [f..., P...]
};

struct Scenario {
    std::string name;
    Topology topology;
    std::vector<double> inertias;
    std::vector<double> dampings;
    std::vector<double> mains;  ///< empty or one per node
    SimConfig sim;
    InitialState initial;
    std::optional<SectorDisturbance> disturbance;
    std::optional<RescaleSpec> rescale;

    /// Initial state for a run; Random draws from `sim.seed`.
    Eigen::VectorXd initial_state() const;

    /// Copy with every node's damping set to `d`.
    Scenario with_damping(double d) const;

    NetworkSystem system() const;
};

/// Parses and validates. `source` names the document in error messages.
Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");

Scenario load_scenario(const std::filesystem::path& path);

/// Text of a scenario shipped with the library ("nigeria").
std::string_view bundled_scenario_text(std::string_view name);

Scenario bundled_scenario(std::string_view name);

}  // namespace swingnet
