// swingnet: classify, simulate and check micro-grid swing networks.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swingnet/commands.hpp"
#include "swingnet/error.hpp"
#include "swingnet/scenario.hpp"

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

swingnet::Scenario resolve(const std::string& spec) {
    if (spec.rfind(kBuiltinPrefix, 0) == 0) return swingnet::bundled_scenario(spec.substr(kBuiltinPrefix.size()));
    return swingnet::load_scenario(spec);
}

std::optional<swingnet::Integrator> parse_method(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s == "euler" ? swingnet::Integrator::ExplicitEuler : swingnet::Integrator::RK4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transient classification, simulation and SPR checks for interconnected micro-grids"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<double> dampings;
    std::vector<double> xis;
    std::string out_dir = ".";
    std::string method;
    std::optional<std::uint64_t> seed;

    auto add_method = [&](CLI::App* cmd) {
        cmd->add_option("--method", method, "Integrator")->check(CLI::IsMember({"euler", "rk4"}));
    };
    auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", seed, "Random seed (overrides the scenario)"); };

    auto* classify = app.add_subcommand("classify", "Single-grid and network transient classification");
    classify->add_option("--scenario", scenario_path, "Scenario file or builtin:<name>")->required();
    classify->add_option("--damping", dampings, "Damping values to classify (overrides the scenario)")->delimiter(',');

    auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum and degree bounds");
    spectrum->add_option("--scenario", scenario_path, "Scenario file or builtin:<name>")->required();

    auto* simulate = app.add_subcommand("simulate", "Integrate trajectories and write CSV");
    simulate->add_option("--scenario", scenario_path, "Scenario file or builtin:<name>")->required();
    simulate->add_option("--damping", dampings, "One run per damping value")->delimiter(',');
    simulate->add_option("--out", out_dir, "Output directory");
    add_method(simulate);
    add_seed(simulate);

    double inertia = 1.0, damping = 1.0, sync = 1.0, gain = 1.0;
    double omega_min = 1e-3, omega_max = 1e3;
    std::size_t omega_points = 200;
    std::string spr_csv;
    auto* spr = app.add_subcommand("spr-check", "Strict positive realness of Z(s) = I + kG(s)");
    spr->add_option("--inertia,-M", inertia, "Inertia M")->capture_default_str();
    spr->add_option("--damping,-D", damping, "Damping D")->capture_default_str();
    spr->add_option("--sync,-T", sync, "Synchronizing coefficient T")->capture_default_str();
    spr->add_option("--k", gain, "Sector gain k")->capture_default_str();
    spr->add_option("--omega-min", omega_min)->capture_default_str();
    spr->add_option("--omega-max", omega_max)->capture_default_str();
    spr->add_option("--omega-points", omega_points)->capture_default_str();
    spr->add_option("--out", spr_csv, "CSV file for the sweep");

    auto* replicate = app.add_subcommand("replicate-paper", "Run both simulation campaigns end to end");
    replicate->add_option("--scenario", scenario_path, "Network scenario (default builtin:nigeria)");
    replicate->add_option("--damping", dampings, "Network campaign dampings (default 1,3,6)")->delimiter(',');
    replicate->add_option("--xi", xis, "Disturbance periodicity factors (default 1,5,10)")->delimiter(',');
    replicate->add_option("--out", out_dir, "Output directory");
    add_method(replicate);
    add_seed(replicate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : swingnet::kExitInputError;
    }

    try {
        if (classify->parsed()) return swingnet::cmd_classify(resolve(scenario_path), dampings, std::cout);
        if (spectrum->parsed()) return swingnet::cmd_spectrum(resolve(scenario_path), std::cout);
        if (simulate->parsed()) {
            swingnet::SimulateOptions options;
            options.dampings = dampings;
            options.out_dir = out_dir;
            options.method = parse_method(method);
            options.seed = seed;
            return swingnet::cmd_simulate(resolve(scenario_path), options, std::cout);
        }
        if (spr->parsed()) {
            const swingnet::LureSystem sys{{inertia, damping, sync}, gain};
            const auto grid = swingnet::log_grid(omega_min, omega_max, omega_points);
            std::optional<std::filesystem::path> csv;
            if (!spr_csv.empty()) csv = spr_csv;
            return swingnet::cmd_spr(sys, grid, csv, std::cout);
        }
        if (replicate->parsed()) {
            swingnet::ReplicateOptions options;
            if (!dampings.empty()) options.dampings = dampings;
            if (!xis.empty()) options.xis = xis;
            options.out_dir = out_dir;
            options.method = parse_method(method);
            options.seed = seed;
            const auto network = resolve(scenario_path.empty() ? "builtin:nigeria" : scenario_path);
            return swingnet::cmd_replicate(network, options, std::cout);
        }
    } catch (const swingnet::NonFiniteError& e) {
        std::cerr << "error: " << e.what() << " (step " << e.step() << ")\n";
        return swingnet::kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return swingnet::kExitInputError;
    }
    return swingnet::kExitInputError;
}
