#include "swingnet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "swingnet/classify.hpp"
#include "swingnet/error.hpp"
#include "swingnet/graph.hpp"

namespace swingnet {

namespace {

std::string format_number(double v, int precision = 6) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(precision) << v;
    return s.str();
}

// "4" for sqrt(16), "√32≈5.657" for sqrt(32).
std::string format_sqrt(double radicand) {
    const double root = std::sqrt(radicand);
    if (root == std::round(root)) return format_number(root);
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << "√" << format_number(radicand) << "≈" << std::fixed << std::setprecision(3) << root;
    return s.str();
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_number(z.real());
    return format_number(z.real()) + (z.imag() < 0.0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

bool all_equal(const std::vector<double>& v, double value) {
    return std::all_of(v.begin(), v.end(), [value](double x) { return x == value; });
}

std::string scenario_name(const Scenario& s) { return s.name.empty() ? "scenario" : s.name; }

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << contents;
    if (!file) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_text(const SimResult& result, const Topology& topo) {
    std::ostringstream s;
    write_csv(s, result, topo.labels());
    return s.str();
}

std::string verdict_line(const NetworkClass& nc, double damping) {
    const std::string by_inspection =
        nc.all_real_by_inspection ? "all modes real" : "complex mode present";
    const std::string d = "D=" + format_number(damping);
    if (!nc.bounds) return std::string(to_string(nc.overall)) + " (by inspection: " + by_inspection + ")";
    const std::string no_osc = format_sqrt(8.0 * nc.d_max);
    const std::string osc = format_sqrt(4.0 * nc.d_max);
    switch (nc.overall) {
        case NetworkVerdict::AllRealGuaranteed:
            return "AllRealGuaranteed (" + d + " ≥ " + no_osc + ")";
        case NetworkVerdict::ComplexModeExists:
            return "ComplexModeExists (" + d + " ≤ " + osc + ")";
        case NetworkVerdict::Indeterminate:
            return "Indeterminate (" + osc + " < " + d + " < " + no_osc + "); resolved by inspection: " +
                   (nc.all_real_by_inspection ? "AllReal" : "ComplexModeExists");
    }
    return {};
}

// Network classification of the assembled system, or nullopt with a reason
// when the damping/inertia ratio is not shared by every node.
std::optional<NetworkClass> classify_network(const Scenario& s, std::string& reason) {
    const NetworkSystem sys = s.system();
    const auto ratio = sys.homogeneous_ratio();
    if (!ratio) {
        reason = "not classified (D_i/M_i differs across nodes)";
        return std::nullopt;
    }
    LaplacianMatrix l{sys.laplacian(), std::nullopt};
    const bool unit_inertia = all_equal(s.inertias, 1.0);
    if (!unit_inertia) l = weighted_laplacian(l, s.inertias);
    const Spectrum spec = spectrum(l);

    const bool unit_edges = std::all_of(s.topology.edges().begin(), s.topology.edges().end(),
                                        [](const Edge& e) { return e.sync == 1.0; });
    const bool no_mains = s.mains.empty() || all_equal(s.mains, 0.0);
    std::optional<int> d_max;
    if (unit_edges && unit_inertia && no_mains && !s.topology.edges().empty())
        d_max = degree_bounds(s.topology).d_max;
    return network_modes(spec, *ratio, d_max);
}

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range range_of(const Eigen::MatrixXd& m) { return {m.minCoeff(), m.maxCoeff()}; }

std::string band_report(const char* what, Range r, double lo, double hi, const char* unit) {
    const bool inside = r.lo >= lo && r.hi <= hi;
    return std::string(what) + " [" + format_number(r.lo, 7) + ", " + format_number(r.hi, 7) + "] " + unit +
           (inside ? " inside " : " OUTSIDE ") + "[" + format_number(lo, 6) + ", " + format_number(hi, 6) + "]";
}

void report_run(std::ostream& out, const std::filesystem::path& path, const SimResult& r) {
    out << "  wrote " << path.string() << " (" << r.samples() << " samples";
    if (!r.reinit_steps.empty()) out << ", " << r.reinit_steps.size() << " reinitializations";
    out << ")\n";
    const bool physical = r.units == Units::Physical;
    const Range f = range_of(r.frequencies);
    const Range p = range_of(r.powers);
    out << "    f range [" << format_number(f.lo, 7) << ", " << format_number(f.hi, 7) << "]"
        << (physical ? " Hz" : "") << "; P range [" << format_number(p.lo, 7) << ", "
        << format_number(p.hi, 7) << "]" << (physical ? " MWh" : "") << '\n';
}

}  // namespace

int cmd_classify(const Scenario& scenario, std::span<const double> dampings, std::ostream& out) {
    std::vector<double> values(dampings.begin(), dampings.end());
    const bool override_d = !values.empty();
    if (!override_d) values.push_back(scenario.dampings.front());

    const auto& topo = scenario.topology;
    out << "scenario: " << scenario_name(scenario) << " (" << topo.node_count() << " nodes, "
        << topo.edges().size() << " edges";
    if (!topo.edges().empty()) out << ", d_max = " << degree_bounds(topo).d_max;
    out << ")\n";

    const auto weighted_degree = topo.weighted_degrees();
    for (double d : values) {
        const Scenario s = override_d ? scenario.with_damping(d) : scenario;
        out << '\n' << "D = " << format_number(d) << (override_d ? "" : " (node 1; from scenario)") << '\n';
        out << "  single grid vs. mains (T = mains coupling, else sum of line coefficients):\n";
        for (std::size_t i = 0; i < topo.node_count(); ++i) {
            const double mains = s.mains.empty() ? 0.0 : s.mains[i];
            const double sync = mains > 0.0 ? mains : weighted_degree[i];
            out << "    " << std::left << std::setw(10) << topo.labels()[i] << std::right;
            if (!(sync > 0.0)) {
                out << " isolated (no coupling)\n";
                continue;
            }
            const GridParams p{s.inertias[i], s.dampings[i], sync};
            const TransientClass c = classify_single(p);
            out << " M=" << format_number(p.inertia) << " D=" << format_number(p.damping)
                << " T=" << format_number(p.sync) << "  threshold " << format_number(c.damping_threshold)
                << "  " << to_string(c.kind) << "  lambda = " << format_complex(c.eigenvalues[0]) << ", "
                << format_complex(c.eigenvalues[1]) << '\n';
        }

        std::string reason;
        const auto nc = classify_network(s, reason);
        if (!nc) {
            out << "  network: " << reason << '\n';
            continue;
        }
        const double ratio = *s.system().homogeneous_ratio();
        out << "  network: " << verdict_line(*nc, ratio) << '\n';
        out << "  modes (mu, lambda+, lambda-):\n";
        for (const auto& m : nc->per_mode)
            out << "    " << format_number(m.laplacian_eigenvalue) << "  " << format_complex(m.lambda_plus)
                << "  " << format_complex(m.lambda_minus) << '\n';
    }
    return kExitOk;
}

int cmd_spectrum(const Scenario& scenario, std::ostream& out) {
    const auto& topo = scenario.topology;
    out << "scenario: " << scenario_name(scenario) << " (" << topo.node_count() << " nodes, "
        << topo.edges().size() << " edges)\n";

    auto print = [&out](const char* title, const Spectrum& spec) {
        out << title << ":\n ";
        for (double v : spec.eigenvalues) out << ' ' << format_number(std::abs(v) < 1e-12 ? 0.0 : v);
        out << "\n  mu_max = " << format_number(spec.max()) << '\n';
    };

    const Spectrum unit = spectrum(build_laplacian(topo, LaplacianWeights::Unit));
    print("Laplacian eigenvalues (unit weights)", unit);
    const DegreeBounds b = degree_bounds(topo);
    const bool inside = unit.max() >= b.lower - 1e-9 && unit.max() <= b.upper + 1e-9;
    out << "  d_max = " << b.d_max << ", bracket [" << format_number(b.lower) << ", "
        << format_number(b.upper) << "] " << (inside ? "contains" : "DOES NOT contain") << " mu_max\n";

    const bool unit_edges = std::all_of(topo.edges().begin(), topo.edges().end(),
                                        [](const Edge& e) { return e.sync == 1.0; });
    if (!unit_edges) print("Laplacian eigenvalues (weights T)", spectrum(build_laplacian(topo, LaplacianWeights::FromT)));
    if (!all_equal(scenario.inertias, 1.0))
        print("Laplacian eigenvalues (inertia-weighted, Diag(1/M) L)",
              spectrum(weighted_laplacian(build_laplacian(topo, LaplacianWeights::FromT), scenario.inertias)));

    const std::size_t zeros = unit.zero_multiplicity();
    if (zeros > 1)
        out << "warning: graph is disconnected (eigenvalue 0 has multiplicity " << zeros
            << "); consensus results do not apply\n";
    else
        out << "connected: yes (algebraic connectivity " << format_number(unit.eigenvalues.size() > 1 ? unit.eigenvalues[1] : 0.0)
            << ")\n";
    return kExitOk;
}

int cmd_simulate(const Scenario& scenario, const SimulateOptions& options, std::ostream& out) {
    std::filesystem::create_directories(options.out_dir);
    Scenario base = scenario;
    if (options.seed) base.sim.seed = *options.seed;
    if (options.method) base.sim.method = *options.method;

    std::vector<std::optional<double>> runs;
    if (options.dampings.empty()) runs.emplace_back(std::nullopt);
    for (double d : options.dampings) runs.emplace_back(d);

    out << "scenario: " << scenario_name(base) << ", method " << to_string(base.sim.method) << ", dt "
        << format_number(base.sim.dt) << ", " << base.sim.steps << " steps, seed " << base.sim.seed << '\n';
    for (const auto& d : runs) {
        const Scenario s = d ? base.with_damping(*d) : base;
        const SimResult r = simulate(s.system(), s.initial_state(), s.sim, s.disturbance);
        const std::string file =
            scenario_name(s) + (d ? "_D" + format_number(*d) : std::string()) + ".csv";
        const auto path = options.out_dir / file;
        write_file(path, csv_text(r, s.topology));
        out << (d ? "D = " + format_number(*d) : std::string("scenario dampings")) << '\n';
        report_run(out, path, r);
    }
    return kExitOk;
}

int cmd_spr(const LureSystem& sys, std::span<const double> omega_grid,
            const std::optional<std::filesystem::path>& csv_path, std::ostream& out) {
    const SprReport r = check_spr(sys, omega_grid);
    out << "loop: M=" << format_number(sys.grid.inertia) << " D=" << format_number(sys.grid.damping)
        << " T=" << format_number(sys.grid.sync) << " k=" << format_number(sys.gain) << '\n';
    out << "poles: " << format_complex(r.poles[0]) << ", " << format_complex(r.poles[1])
        << (r.hurwitz ? "  (Hurwitz)" : "  (NOT Hurwitz)") << '\n';
    out << "Z(inf) + Z(inf)^T = [[" << format_number(r.limit(0, 0)) << ", " << format_number(r.limit(0, 1))
        << "], [" << format_number(r.limit(1, 0)) << ", " << format_number(r.limit(1, 1)) << "]]"
        << (r.limit_ok ? "  (= 2I)" : "  (!= 2I)") << '\n';
    out << "sweep: " << r.sweep.size() << " points in [" << format_number(omega_grid.front()) << ", "
        << format_number(omega_grid.back()) << "], min eigenvalue margin " << format_number(r.margin) << '\n';
    if (r.trace_disagrees)
        out << "note: trace z11 + z22 is positive where H(omega) is indefinite\n";
    out << "verdict: " << to_string(r.verdict.kind);
    if (r.verdict.omega) out << " at omega = " << format_number(*r.verdict.omega);
    out << '\n';
    if (csv_path) {
        if (csv_path->has_parent_path()) std::filesystem::create_directories(csv_path->parent_path());
        std::ostringstream s;
        write_spr_csv(s, r);
        write_file(*csv_path, s.str());
        out << "wrote " << csv_path->string() << '\n';
    }
    return r.verdict.kind == SprVerdictKind::StrictlyPositiveReal ? kExitOk : kExitViolation;
}

Scenario single_grid_scenario(double damping, std::uint64_t seed) {
    Scenario s;
    s.name = "single";
    s.topology = Topology(1, {"grid"}, {});
    s.inertias = {1.0};
    s.dampings = {damping};
    s.mains = {1.0};
    s.sim.dt = 0.01;
    s.sim.steps = 1000;
    s.sim.seed = seed;
    s.rescale = RescaleSpec{};
    s.sim.rescale = s.rescale;
    return s;
}

int cmd_replicate(const Scenario& network, const ReplicateOptions& options, std::ostream& out) {
    std::filesystem::create_directories(options.out_dir);
    const RescaleSpec rescale = network.rescale.value_or(RescaleSpec{});
    const double f_lo = rescale.frequency(0.0), f_hi = rescale.frequency(1.0);
    const double p_lo = rescale.power(0.0), p_hi = rescale.power(1.0);

    auto run = [&](Scenario s, const std::string& file) {
        if (options.method) s.sim.method = *options.method;
        const SimResult r = simulate(s.system(), s.initial_state(), s.sim, s.disturbance);
        const auto path = options.out_dir / file;
        write_file(path, csv_text(r, s.topology));
        out << "  wrote " << path.string() << '\n';
        out << "    " << band_report("f", range_of(r.frequencies), f_lo, f_hi, "Hz") << '\n';
        out << "    " << band_report("P", range_of(r.powers), p_lo, p_hi, "MWh") << '\n';
    };

    Scenario base = network;
    base.sim.dt = 0.01;
    base.sim.steps = 500;
    base.sim.reinit_period = 10.0;
    base.sim.rescale = rescale;
    base.rescale = rescale;
    base.initial.kind = InitialState::Kind::Random;
    if (options.seed) base.sim.seed = *options.seed;

    out << "campaign 1: " << scenario_name(base) << " network, M = T = 1, dt 0.01, 500 steps, "
        << "reinit every 10 s, seed " << base.sim.seed << '\n';
    const Spectrum unit = spectrum(build_laplacian(base.topology, LaplacianWeights::Unit));
    out << "  mu_max = " << format_number(unit.max()) << ", d_max = " << degree_bounds(base.topology).d_max << '\n';
    for (double d : options.dampings) {
        const Scenario s = base.with_damping(d);
        std::string reason;
        const auto nc = classify_network(s, reason);
        out << "D = " << format_number(d) << ": " << (nc ? verdict_line(*nc, d) : reason) << '\n';
        run(s, "campaign1_D" + format_number(d) + ".csv");
    }

    const std::uint64_t seed = options.seed.value_or(base.sim.seed);
    const SectorDisturbance sinusoid{2.0, 1.0, SectorShape::PaperSinusoid};
    out << "\ncampaign 2: isolated grid vs. mains, M = T = 1, dt 0.01, 1000 steps, "
        << "psi gain 1 + sin(xi f t), seed " << seed << '\n';
    for (double xi : options.xis) {
        Scenario s = single_grid_scenario(1.0, seed);
        s.disturbance = sinusoid;
        s.disturbance->xi = xi;
        out << "D = 1, xi = " << format_number(xi) << '\n';
        run(s, "campaign2_xi" + format_number(xi) + ".csv");
    }
    for (double d : options.single_dampings) {
        Scenario s = single_grid_scenario(d, seed);
        s.disturbance = sinusoid;
        out << "D = " << format_number(d) << ", xi = 1\n";
        run(s, "campaign2_D" + format_number(d) + ".csv");
    }
    return kExitOk;
}

}  // namespace swingnet
