#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "swingnet/classify.hpp"
#include "swingnet/error.hpp"
#include "swingnet/graph.hpp"
#include "swingnet/scenario.hpp"
#include "swingnet/sim.hpp"
#include "swingnet/spr.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace swingnet;

namespace {

void bind_graph(py::module_& m) {
    py::class_<Edge>(m, "Edge")
        .def(py::init([](std::size_t a, std::size_t b, double t) { return Edge{a, b, t}; }), "from_"_a, "to"_a,
             "sync"_a = 1.0)
        .def_readonly("from_", &Edge::from)
        .def_readonly("to", &Edge::to)
        .def_readonly("sync", &Edge::sync)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.from) + ", " + std::to_string(e.to) + ", " + std::to_string(e.sync) + ")";
        });

    py::class_<Topology>(m, "Topology")
        .def(py::init([](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
                         std::vector<std::string> labels) {
                 std::vector<Edge> es;
                 for (const auto& [a, b, t] : edges) es.push_back({a, b, t});
                 return Topology(n, std::move(labels), std::move(es));
             }),
             "node_count"_a, "edges"_a = std::vector<std::tuple<std::size_t, std::size_t, double>>{},
             "labels"_a = std::vector<std::string>{})
        .def_property_readonly("node_count", &Topology::node_count)
        .def_property_readonly("labels", &Topology::labels)
        .def_property_readonly("edges", &Topology::edges)
        .def("degrees", &Topology::degrees)
        .def("component_count", &Topology::component_count)
        .def("connected", &Topology::connected);

    py::enum_<LaplacianWeights>(m, "LaplacianWeights")
        .value("Unit", LaplacianWeights::Unit)
        .value("FromT", LaplacianWeights::FromT);
    py::enum_<SpectrumSource>(m, "SpectrumSource")
        .value("UnweightedLaplacian", SpectrumSource::UnweightedLaplacian)
        .value("WeightedLaplacian", SpectrumSource::WeightedLaplacian);

    py::class_<LaplacianMatrix>(m, "LaplacianMatrix")
        .def_readonly("entries", &LaplacianMatrix::entries)
        .def_readonly("inertias", &LaplacianMatrix::inertias)
        .def_property_readonly("weighted", &LaplacianMatrix::weighted);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("source", &Spectrum::source)
        .def("max", &Spectrum::max)
        .def("zero_multiplicity", &Spectrum::zero_multiplicity, "tol"_a = 1e-9);

    py::class_<DegreeBounds>(m, "DegreeBounds")
        .def_readonly("d_max", &DegreeBounds::d_max)
        .def_readonly("lower", &DegreeBounds::lower)
        .def_readonly("upper", &DegreeBounds::upper);

    m.def("build_laplacian", &build_laplacian, "topology"_a, "weights"_a = LaplacianWeights::Unit);
    m.def("weighted_laplacian",
          [](const LaplacianMatrix& l, const std::vector<double>& m) { return weighted_laplacian(l, m); },
          "laplacian"_a, "inertias"_a);
    m.def("spectrum", &spectrum, "laplacian"_a);
    m.def("degree_bounds", &degree_bounds, "topology"_a);
}

void bind_classify(py::module_& m) {
    py::class_<GridParams>(m, "GridParams")
        .def(py::init([](double mm, double d, double t) { return GridParams{mm, d, t}; }), "M"_a = 1.0, "D"_a = 1.0,
             "T"_a = 1.0)
        .def_readwrite("M", &GridParams::inertia)
        .def_readwrite("D", &GridParams::damping)
        .def_readwrite("T", &GridParams::sync)
        .def("state_matrix", &GridParams::state_matrix);

    py::enum_<TransientKind>(m, "TransientKind")
        .value("AsymptoticallyStableNode", TransientKind::AsymptoticallyStableNode)
        .value("AsymptoticallyStableSpiral", TransientKind::AsymptoticallyStableSpiral)
        .value("Boundary", TransientKind::Boundary);
    py::class_<TransientClass>(m, "TransientClass")
        .def_readonly("kind", &TransientClass::kind)
        .def_readonly("eigenvalues", &TransientClass::eigenvalues)
        .def_readonly("damping_threshold", &TransientClass::damping_threshold);
    m.def("classify_single", &classify_single, "params"_a);

    py::enum_<PlanarClass>(m, "PlanarClass")
        .value("StableNode", PlanarClass::StableNode)
        .value("StableSpiral", PlanarClass::StableSpiral)
        .value("UnstableNode", PlanarClass::UnstableNode)
        .value("UnstableSpiral", PlanarClass::UnstableSpiral)
        .value("Saddle", PlanarClass::Saddle)
        .value("Degenerate", PlanarClass::Degenerate);
    m.def("classify_planar", &classify_planar, "a"_a);

    py::class_<DampingBounds>(m, "DampingBounds")
        .def_readonly("no_oscillation", &DampingBounds::no_oscillation)
        .def_readonly("oscillation", &DampingBounds::oscillation);
    m.def("damping_bounds", &damping_bounds, "d_max"_a);

    py::enum_<NetworkVerdict>(m, "NetworkVerdict")
        .value("AllRealGuaranteed", NetworkVerdict::AllRealGuaranteed)
        .value("ComplexModeExists", NetworkVerdict::ComplexModeExists)
        .value("Indeterminate", NetworkVerdict::Indeterminate);
    py::class_<NetworkMode>(m, "NetworkMode")
        .def_readonly("laplacian_eigenvalue", &NetworkMode::laplacian_eigenvalue)
        .def_readonly("lambda_plus", &NetworkMode::lambda_plus)
        .def_readonly("lambda_minus", &NetworkMode::lambda_minus);
    py::class_<NetworkClass>(m, "NetworkClass")
        .def_readonly("per_mode", &NetworkClass::per_mode)
        .def_readonly("overall", &NetworkClass::overall)
        .def_readonly("all_real_by_inspection", &NetworkClass::all_real_by_inspection)
        .def_readonly("bounds", &NetworkClass::bounds);
    m.def("network_modes", &network_modes, "spectrum"_a, "damping"_a, "d_max"_a = std::nullopt);

    m.def(
        "predict_consensus",
        [](const std::vector<double>& p0, double d) {
            const auto c = predict_consensus(p0, d);
            return py::make_tuple(c.frequency, c.power);
        },
        "initial_power"_a, "damping"_a);
}

void bind_sim(py::module_& m) {
    py::class_<RescaleSpec>(m, "RescaleSpec")
        .def(py::init<>())
        .def_readwrite("f_nominal", &RescaleSpec::f_nominal)
        .def_readwrite("f_span", &RescaleSpec::f_span)
        .def_readwrite("p_nominal", &RescaleSpec::p_nominal)
        .def_readwrite("p_span", &RescaleSpec::p_span);

    py::enum_<Integrator>(m, "Integrator")
        .value("ExplicitEuler", Integrator::ExplicitEuler)
        .value("RK4", Integrator::RK4);
    py::enum_<SectorShape>(m, "SectorShape")
        .value("Identity", SectorShape::Identity)
        .value("PaperSinusoid", SectorShape::PaperSinusoid)
        .value("ClippedLinear", SectorShape::ClippedLinear)
        .value("PaperSinusoidAdditive", SectorShape::PaperSinusoidAdditive);

    py::class_<SectorDisturbance>(m, "SectorDisturbance")
        .def(py::init([](double k, double xi, SectorShape s) { return SectorDisturbance{k, xi, s}; }),
             "k_tilde"_a = 2.0, "xi"_a = 1.0, "shape"_a = SectorShape::PaperSinusoid)
        .def_readwrite("k_tilde", &SectorDisturbance::k_tilde)
        .def_readwrite("xi", &SectorDisturbance::xi)
        .def_readwrite("shape", &SectorDisturbance::shape)
        .def("apply", &SectorDisturbance::apply, "v"_a, "own_frequency"_a, "t"_a);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimConfig::dt)
        .def_readwrite("steps", &SimConfig::steps)
        .def_readwrite("method", &SimConfig::method)
        .def_readwrite("reinit_period", &SimConfig::reinit_period)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("rescale", &SimConfig::rescale)
        .def_readwrite("exogenous", &SimConfig::exogenous);

    py::class_<NetworkSystem>(m, "NetworkSystem")
        .def_property_readonly("size", &NetworkSystem::size)
        .def_property_readonly("topology", &NetworkSystem::topology)
        .def_property_readonly("laplacian", &NetworkSystem::laplacian)
        .def_property_readonly("state_matrix", &NetworkSystem::state_matrix)
        .def("homogeneous_ratio", &NetworkSystem::homogeneous_ratio);
    m.def(
        "assemble",
        [](const Topology& t, const std::vector<double>& mm, const std::vector<double>& d,
           const std::vector<double>& mains) { return assemble(t, mm, d, mains); },
        "topology"_a, "inertias"_a, "dampings"_a, "mains"_a = std::vector<double>{});

    py::enum_<Units>(m, "Units").value("Normalized", Units::Normalized).value("Physical", Units::Physical);
    py::class_<SimResult>(m, "SimResult")
        .def_readonly("times", &SimResult::times)
        .def_readonly("frequencies", &SimResult::frequencies)
        .def_readonly("powers", &SimResult::powers)
        .def_readonly("units", &SimResult::units)
        .def_readonly("reinit_steps", &SimResult::reinit_steps);

    m.def("simulate", &simulate, "system"_a, "x0"_a, "config"_a, "disturbance"_a = std::nullopt);
    m.def("uniform_initial_state", &uniform_initial_state, "n"_a, "seed"_a);
    m.def(
        "energy_diagnostics",
        [](const SimResult& r, const NetworkSystem& s) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : energy_diagnostics(r, s)) out.emplace_back(p.t, p.total_power);
            return out;
        },
        "result"_a, "system"_a);
}

void bind_spr(py::module_& m) {
    py::class_<LureSystem>(m, "LureSystem")
        .def(py::init([](GridParams p, double k) { return LureSystem{p, k}; }), "params"_a, "k"_a)
        .def_readwrite("params", &LureSystem::grid)
        .def_readwrite("k", &LureSystem::gain);

    m.def("transfer_G", &transfer_G, "params"_a, "s"_a);
    m.def("transfer_Z", &transfer_Z, "system"_a, "s"_a);
    m.def("log_grid", &log_grid, "lo"_a, "hi"_a, "points"_a);

    py::enum_<SprVerdictKind>(m, "SprVerdict")
        .value("StrictlyPositiveReal", SprVerdictKind::StrictlyPositiveReal)
        .value("Violated", SprVerdictKind::Violated)
        .value("Inconclusive", SprVerdictKind::Inconclusive);
    py::class_<SprReport>(m, "SprReport")
        .def_readonly("hurwitz", &SprReport::hurwitz)
        .def_readonly("poles", &SprReport::poles)
        .def_readonly("limit", &SprReport::limit)
        .def_readonly("limit_ok", &SprReport::limit_ok)
        .def_readonly("margin", &SprReport::margin)
        .def_property_readonly("verdict", [](const SprReport& r) { return r.verdict.kind; })
        .def_property_readonly("violated_at", [](const SprReport& r) { return r.verdict.omega; })
        .def_property_readonly("sweep", [](const SprReport& r) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& p : r.sweep) out.emplace_back(p.omega, p.min_eigenvalue, p.trace);
            return out;
        });
    m.def(
        "check_spr",
        [](const LureSystem& s, std::optional<std::vector<double>> grid) {
            return check_spr(s, grid ? *grid : default_omega_grid());
        },
        "system"_a, "omega_grid"_a = std::nullopt);
}

void bind_scenario(py::module_& m) {
    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("topology", &Scenario::topology)
        .def_readonly("inertias", &Scenario::inertias)
        .def_readonly("dampings", &Scenario::dampings)
        .def_readonly("sim", &Scenario::sim)
        .def_readonly("disturbance", &Scenario::disturbance)
        .def_readonly("rescale", &Scenario::rescale)
        .def("initial_state", &Scenario::initial_state)
        .def("with_damping", &Scenario::with_damping, "d"_a)
        .def("system", &Scenario::system);
    m.def("load_scenario", &load_scenario, "path"_a);
    m.def("parse_scenario", &parse_scenario, "text"_a, "source"_a = "<scenario>");
    m.def("bundled_scenario", &bundled_scenario, "name"_a = "nigeria");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Swing-equation micro-grid networks: spectra, transient classification, simulation, SPR checks";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ArithmeticError);
    py::register_exception<PoleProximityError>(m, "PoleProximityError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    bind_graph(m);
    bind_classify(m);
    bind_sim(m);
    bind_spr(m);
    bind_scenario(m);
}
