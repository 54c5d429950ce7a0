#include "swingnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "swingnet/error.hpp"

namespace swingnet {

namespace detail {
std::string_view bundled_nigeria();
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("unknown field '" + (path.empty() ? key : path + "." + key) + "'");
    }
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path + " must be an object");
    return j;
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path + " must be a number");
    return j.get<double>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : number(*it, path + "." + key);
}

// Scalar broadcast to every node, or one value per node.
std::vector<double> per_node(const json& obj, const char* key, const std::string& path,
                             const Topology& topo, std::optional<double> fallback) {
    const std::size_t n = topo.node_count();
    const std::string where = path + "." + key;
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (!fallback) throw ValidationError(where + " is required");
        return std::vector<double>(n, *fallback);
    }
    if (it->is_number()) return std::vector<double>(n, it->get<double>());
    if (!it->is_array()) throw ValidationError(where + " must be a number or an array");
    if (it->size() != n)
        throw ValidationError(where + " has " + std::to_string(it->size()) + " entries but the topology has " +
                              std::to_string(n) + " nodes");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(number((*it)[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void require_positive(const std::vector<double>& values, const std::string& path, const Topology& topo) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw ValidationError(path + "[" + std::to_string(i) + "] (node '" + topo.labels()[i] +
                                  "') must be positive, got " + std::to_string(values[i]));
    }
}

std::size_t node_ref(const json& j, const std::vector<std::string>& labels, const std::string& path) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        auto it = std::find(labels.begin(), labels.end(), name);
        if (it == labels.end()) throw ValidationError(path + " names unknown node '" + name + "'");
        return static_cast<std::size_t>(it - labels.begin());
    }
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    throw ValidationError(path + " must be a node label or a nonnegative index");
}

Topology parse_topology(const json& j, double default_sync) {
    require_object(j, "topology");
    reject_unknown_keys(j, "topology", {"nodes", "node_count", "edges"});

    std::vector<std::string> labels;
    std::size_t n = 0;
    if (auto it = j.find("nodes"); it != j.end()) {
        if (!it->is_array()) throw ValidationError("topology.nodes must be an array of labels");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string())
                throw ValidationError("topology.nodes[" + std::to_string(i) + "] must be a string");
            labels.push_back((*it)[i].get<std::string>());
        }
        n = labels.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (labels[i] == labels[k]) throw ValidationError("topology.nodes repeats label '" + labels[i] + "'");
    }
    if (auto it = j.find("node_count"); it != j.end()) {
        if (!it->is_number_unsigned()) throw ValidationError("topology.node_count must be a positive integer");
        const auto count = it->get<std::size_t>();
        if (!labels.empty() && count != n)
            throw ValidationError("topology.node_count disagrees with topology.nodes");
        n = count;
    }
    if (n == 0) throw ValidationError("topology must have at least one node");
    if (labels.empty())
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));

    std::vector<Edge> edges;
    if (auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array()) throw ValidationError("topology.edges must be an array");
        for (std::size_t e = 0; e < it->size(); ++e) {
            const json& item = (*it)[e];
            const std::string path = "topology.edges[" + std::to_string(e) + "]";
            Edge edge;
            edge.sync = default_sync;
            if (item.is_array()) {
                if (item.size() != 2 && item.size() != 3)
                    throw ValidationError(path + " must be [from, to] or [from, to, T]");
                edge.from = node_ref(item[0], labels, path + "[0]");
                edge.to = node_ref(item[1], labels, path + "[1]");
                if (item.size() == 3) edge.sync = number(item[2], path + "[2]");
            } else if (item.is_object()) {
                reject_unknown_keys(item, path, {"from", "to", "T"});
                if (!item.contains("from") || !item.contains("to"))
                    throw ValidationError(path + " needs 'from' and 'to'");
                edge.from = node_ref(item["from"], labels, path + ".from");
                edge.to = node_ref(item["to"], labels, path + ".to");
                edge.sync = number_or(item, "T", path, default_sync);
            } else {
                throw ValidationError(path + " must be an array or an object");
            }
            edges.push_back(edge);
        }
    }
    try {
        return Topology(n, std::move(labels), std::move(edges));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("topology: ") + e.what());
    }
}

Integrator parse_method(const json& j, const std::string& path) {
    if (!j.is_string()) throw ValidationError(path + " must be \"rk4\" or \"euler\"");
    const auto s = j.get<std::string>();
    if (s == "rk4") return Integrator::RK4;
    if (s == "euler") return Integrator::ExplicitEuler;
    throw ValidationError(path + " must be \"rk4\" or \"euler\", got \"" + s + "\"");
}

SectorShape parse_shape(const json& j) {
    if (!j.is_string()) throw ValidationError("disturbance.shape must be a string");
    const auto s = j.get<std::string>();
    for (auto shape : {SectorShape::Identity, SectorShape::PaperSinusoid, SectorShape::ClippedLinear,
                       SectorShape::PaperSinusoidAdditive})
        if (s == to_string(shape)) return shape;
    throw ValidationError("disturbance.shape '" + s + "' is not one of identity, sinusoid, clipped, sinusoid-additive");
}

void parse_sim(const json& j, std::size_t n, SimConfig& sim, InitialState& initial) {
    require_object(j, "sim");
    reject_unknown_keys(j, "sim", {"dt", "steps", "method", "reinit_period", "seed", "initial"});
    sim.dt = number_or(j, "dt", "sim", sim.dt);
    if (auto it = j.find("steps"); it != j.end()) {
        if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
            throw ValidationError("sim.steps must be a positive integer");
        sim.steps = it->get<std::size_t>();
    }
    if (auto it = j.find("method"); it != j.end()) sim.method = parse_method(*it, "sim.method");
    if (auto it = j.find("reinit_period"); it != j.end() && !it->is_null())
        sim.reinit_period = number(*it, "sim.reinit_period");
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned()) throw ValidationError("sim.seed must be a nonnegative integer");
        sim.seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("initial"); it != j.end()) {
        if (it->is_string()) {
            const auto s = it->get<std::string>();
            if (s == "random") initial.kind = InitialState::Kind::Random;
            else if (s == "zero") initial.kind = InitialState::Kind::Zero;
            else throw ValidationError("sim.initial must be \"random\", \"zero\" or {\"f\": [...], \"P\": [...]}");
        } else if (it->is_object()) {
            reject_unknown_keys(*it, "sim.initial", {"f", "P"});
            initial.kind = InitialState::Kind::Explicit;
            initial.values.resize(static_cast<Eigen::Index>(2 * n));
            std::size_t offset = 0;
            for (const char* key : {"f", "P"}) {
                const std::string path = std::string("sim.initial.") + key;
                if (!it->contains(key) || !(*it)[key].is_array() || (*it)[key].size() != n)
                    throw ValidationError(path + " must be an array of " + std::to_string(n) + " numbers");
                for (std::size_t i = 0; i < n; ++i)
                    initial.values(static_cast<Eigen::Index>(offset + i)) =
                        number((*it)[key][i], path + "[" + std::to_string(i) + "]");
                offset += n;
            }
        } else {
            throw ValidationError("sim.initial must be a string or an object");
        }
    }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Eigen::VectorXd Scenario::initial_state() const {
    const std::size_t n = topology.node_count();
    switch (initial.kind) {
        case InitialState::Kind::Random: return uniform_initial_state(n, sim.seed);
        case InitialState::Kind::Zero: return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n));
        case InitialState::Kind::Explicit: return initial.values;
    }
    return {};
}

Scenario Scenario::with_damping(double d) const {
    Scenario copy = *this;
    std::fill(copy.dampings.begin(), copy.dampings.end(), d);
    return copy;
}

NetworkSystem Scenario::system() const { return assemble(topology, inertias, dampings, mains); }

Scenario parse_scenario(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte);
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                             ": malformed scenario: " + e.what(),
                         line, column);
    }

    try {
        require_object(doc, "scenario");
        reject_unknown_keys(doc, "", {"name", "topology", "params", "sim", "disturbance", "rescale"});

        Scenario s;
        if (auto it = doc.find("name"); it != doc.end()) {
            if (!it->is_string()) throw ValidationError("name must be a string");
            s.name = it->get<std::string>();
        }

        if (!doc.contains("topology")) throw ValidationError("topology is required");
        if (!doc.contains("params")) throw ValidationError("params is required");
        const json& params = require_object(doc["params"], "params");
        reject_unknown_keys(params, "params", {"M", "D", "T", "mains"});
        const double default_sync = number_or(params, "T", "params", 1.0);
        if (!(default_sync > 0.0)) throw ValidationError("params.T must be positive");

        s.topology = parse_topology(doc["topology"], default_sync);
        s.inertias = per_node(params, "M", "params", s.topology, 1.0);
        s.dampings = per_node(params, "D", "params", s.topology, std::nullopt);
        require_positive(s.inertias, "params.M", s.topology);
        require_positive(s.dampings, "params.D", s.topology);
        if (params.contains("mains")) {
            s.mains = per_node(params, "mains", "params", s.topology, 0.0);
            for (std::size_t i = 0; i < s.mains.size(); ++i)
                if (!(s.mains[i] >= 0.0))
                    throw ValidationError("params.mains[" + std::to_string(i) + "] (node '" +
                                          s.topology.labels()[i] + "') must be nonnegative");
        }

        if (auto it = doc.find("sim"); it != doc.end())
            parse_sim(*it, s.topology.node_count(), s.sim, s.initial);

        if (auto it = doc.find("rescale"); it != doc.end()) {
            require_object(*it, "rescale");
            reject_unknown_keys(*it, "rescale", {"f_nominal", "f_span", "p_nominal", "p_span"});
            RescaleSpec r;
            r.f_nominal = number_or(*it, "f_nominal", "rescale", r.f_nominal);
            r.f_span = number_or(*it, "f_span", "rescale", r.f_span);
            r.p_nominal = number_or(*it, "p_nominal", "rescale", r.p_nominal);
            r.p_span = number_or(*it, "p_span", "rescale", r.p_span);
            r.validate();
            s.rescale = r;
            s.sim.rescale = r;
        }

        if (auto it = doc.find("disturbance"); it != doc.end() && !it->is_null()) {
            require_object(*it, "disturbance");
            reject_unknown_keys(*it, "disturbance", {"shape", "k_tilde", "xi"});
            SectorDisturbance d;
            if (it->contains("shape")) d.shape = parse_shape((*it)["shape"]);
            d.k_tilde = number_or(*it, "k_tilde", "disturbance", d.k_tilde);
            d.xi = number_or(*it, "xi", "disturbance", d.xi);
            d.validate();
            s.disturbance = d;
        }

        s.sim.validate();
        return s;
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(source) + ": " + e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

std::string_view bundled_scenario_text(std::string_view name) {
    if (name == "nigeria") return detail::bundled_nigeria();
    throw ValidationError("no bundled scenario named '" + std::string(name) + "'");
}

Scenario bundled_scenario(std::string_view name) {
    return parse_scenario(bundled_scenario_text(name), "builtin:" + std::string(name));
}

}  // namespace swingnet
