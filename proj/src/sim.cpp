#include "swingnet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <random>

#include "swingnet/error.hpp"

namespace swingnet {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

void fill_uniform(Eigen::VectorXd& x, std::mt19937_64& engine) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = unit(engine);
}

// Right-hand side of the (possibly disturbed) network dynamics. `psi` maps
// (value, own frequency, t) to the measured value.
template <class Measure>
class Dynamics {
public:
    Dynamics(const NetworkSystem& sys, const ExogenousInput& exogenous, Measure psi)
        : n_(static_cast<Eigen::Index>(sys.size())),
          laplacian_(sys.laplacian()),
          exogenous_(exogenous),
          psi_(psi),
          damping_ratio_(n_),
          inverse_inertia_(n_) {
        for (Eigen::Index i = 0; i < n_; ++i) {
            const auto k = static_cast<std::size_t>(i);
            damping_ratio_(i) = sys.dampings()[k] / sys.inertias()[k];
            inverse_inertia_(i) = 1.0 / sys.inertias()[k];
        }
    }

    void operator()(double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) const {
        const double omega = exogenous_ ? exogenous_(t) : 0.0;
        for (Eigen::Index i = 0; i < n_; ++i) {
            const double f = x(i);
            const double measured_f = psi_(f, f, t);
            const double measured_p = psi_(x(n_ + i), f, t);
            dx(i) = -damping_ratio_(i) * measured_f + inverse_inertia_(i) * measured_p + omega;

            double coupling = laplacian_(i, i) * measured_f;
            for (Eigen::Index j = 0; j < n_; ++j)
                if (j != i) coupling += laplacian_(i, j) * x(j);
            dx(n_ + i) = -coupling;
        }
    }

private:
    Eigen::Index n_;
    const Eigen::MatrixXd& laplacian_;
    const ExogenousInput& exogenous_;
    Measure psi_;
    Eigen::VectorXd damping_ratio_;
    Eigen::VectorXd inverse_inertia_;
};

template <class Measure>
SimResult integrate(const NetworkSystem& sys, const Eigen::VectorXd& x0, const SimConfig& cfg,
                    Measure psi) {
    const auto n = static_cast<Eigen::Index>(sys.size());
    const Dynamics<Measure> rhs(sys, cfg.exogenous, psi);

    SimResult out;
    out.times.resize(cfg.steps + 1);
    out.frequencies.resize(static_cast<Eigen::Index>(cfg.steps + 1), n);
    out.powers.resize(static_cast<Eigen::Index>(cfg.steps + 1), n);

    auto record = [&](std::size_t k, const Eigen::VectorXd& x) {
        out.times[k] = static_cast<double>(k) * cfg.dt;
        const auto row = static_cast<Eigen::Index>(k);
        out.frequencies.row(row) = x.head(n).transpose();
        out.powers.row(row) = x.tail(n).transpose();
    };

    std::size_t reinit_every = 0;
    std::mt19937_64 engine = make_engine(cfg.seed, 1);
    if (cfg.reinit_period)
        reinit_every = static_cast<std::size_t>(std::max(1LL, std::llround(*cfg.reinit_period / cfg.dt)));

    Eigen::VectorXd x = x0;
    Eigen::VectorXd k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), stage(2 * n);
    record(0, x);
    const double h = cfg.dt;
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
        const double t = static_cast<double>(k - 1) * h;
        if (cfg.method == Integrator::ExplicitEuler) {
            rhs(t, x, k1);
            x += h * k1;
        } else {
            rhs(t, x, k1);
            stage = x + (0.5 * h) * k1;
            rhs(t + 0.5 * h, stage, k2);
            stage = x + (0.5 * h) * k2;
            rhs(t + 0.5 * h, stage, k3);
            stage = x + h * k3;
            rhs(t + h, stage, k4);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }

        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x(i)) || std::abs(x(i)) > kDivergenceLimit)
                throw NonFiniteError("trajectory diverged at step " + std::to_string(k), k);
        }

        if (reinit_every != 0 && k % reinit_every == 0) {
            fill_uniform(x, engine);
            out.reinit_steps.push_back(k);
        }
        record(k, x);
    }

    if (cfg.rescale) {
        const RescaleSpec& r = *cfg.rescale;
        out.frequencies = out.frequencies.unaryExpr([&r](double v) { return r.frequency(v); });
        out.powers = out.powers.unaryExpr([&r](double v) { return r.power(v); });
        out.units = Units::Physical;
    }
    return out;
}

}  // namespace

void RescaleSpec::validate() const {
    if (!std::isfinite(f_nominal) || !std::isfinite(p_nominal))
        throw ValidationError("rescale nominal values must be finite");
    if (!positive_finite(f_span)) throw ValidationError("rescale f_span must be positive");
    if (!positive_finite(p_span)) throw ValidationError("rescale p_span must be positive");
}

void SectorDisturbance::validate() const {
    if (!positive_finite(k_tilde)) throw ValidationError("sector bound k_tilde must be positive");
    if (!positive_finite(xi)) throw ValidationError("periodicity factor xi must be positive");
    if (shape == SectorShape::Identity && k_tilde < 1.0)
        throw ValidationError("identity disturbance needs k_tilde >= 1");
    if (shape == SectorShape::PaperSinusoid && k_tilde < 2.0)
        throw ValidationError("sinusoidal gain reaches 2, needs k_tilde >= 2");
}

double SectorDisturbance::apply(double v, double own_frequency, double t) const {
    switch (shape) {
        case SectorShape::Identity:
            return v;
        case SectorShape::PaperSinusoid:
            return v * (1.0 + std::sin(xi * own_frequency * t));
        case SectorShape::ClippedLinear:
            return std::clamp(k_tilde * v, -1.0, 1.0);
        case SectorShape::PaperSinusoidAdditive:
            return v + 1.0 + std::sin(xi * own_frequency * t);
    }
    return v;
}

bool SectorDisturbance::in_sector(double v, double psi) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(k_tilde * v) * std::abs(v));
    return psi * (k_tilde * v - psi) >= -slack;
}

void SimConfig::validate() const {
    if (!positive_finite(dt)) throw ValidationError("sim.dt must be positive");
    if (steps == 0) throw ValidationError("sim.steps must be positive");
    if (reinit_period) {
        if (!positive_finite(*reinit_period))
            throw ValidationError("sim.reinit_period must be positive");
        if (*reinit_period < dt) throw ValidationError("sim.reinit_period must be at least dt");
    }
    if (rescale) rescale->validate();
}

std::optional<double> NetworkSystem::homogeneous_ratio() const {
    if (inertias_.empty()) return std::nullopt;
    const double ratio = dampings_[0] / inertias_[0];
    for (std::size_t i = 1; i < inertias_.size(); ++i) {
        if (std::abs(dampings_[i] / inertias_[i] - ratio) > 1e-12 * ratio) return std::nullopt;
    }
    return ratio;
}

NetworkSystem assemble(const Topology& topo, std::span<const double> inertias,
                       std::span<const double> dampings, std::span<const double> mains) {
    const std::size_t n = topo.node_count();
    if (n == 0) throw ValidationError("cannot assemble an empty topology");
    if (inertias.size() != n)
        throw ValidationError("expected " + std::to_string(n) + " inertias, got " +
                              std::to_string(inertias.size()));
    if (dampings.size() != n)
        throw ValidationError("expected " + std::to_string(n) + " dampings, got " +
                              std::to_string(dampings.size()));
    if (!mains.empty() && mains.size() != n)
        throw ValidationError("expected " + std::to_string(n) + " mains couplings, got " +
                              std::to_string(mains.size()));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& name = topo.labels()[i];
        if (!positive_finite(inertias[i]))
            throw ValidationError("inertia M of node '" + name + "' must be positive");
        if (!positive_finite(dampings[i]))
            throw ValidationError("damping D of node '" + name + "' must be positive");
        if (!mains.empty() && (!(mains[i] >= 0.0) || !std::isfinite(mains[i])))
            throw ValidationError("mains coupling of node '" + name + "' must be nonnegative");
    }

    NetworkSystem sys;
    sys.topology_ = topo;
    sys.inertias_.assign(inertias.begin(), inertias.end());
    sys.dampings_.assign(dampings.begin(), dampings.end());
    sys.mains_ = mains.empty() ? std::vector<double>(n, 0.0)
                               : std::vector<double>(mains.begin(), mains.end());

    sys.laplacian_ = build_laplacian(topo, LaplacianWeights::FromT).entries;
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        sys.laplacian_(k, k) += sys.mains_[i];
    }

    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto k = static_cast<std::size_t>(i);
        a(i, i) = -sys.dampings_[k] / sys.inertias_[k];
        a(i, m + i) = 1.0 / sys.inertias_[k];
    }
    a.bottomLeftCorner(m, m) = -sys.laplacian_;
    sys.state_matrix_ = std::move(a);
    return sys;
}

SimResult simulate(const NetworkSystem& sys, const Eigen::VectorXd& x0, const SimConfig& cfg,
                   const std::optional<SectorDisturbance>& disturbance) {
    cfg.validate();
    const auto n = static_cast<Eigen::Index>(sys.size());
    if (x0.size() != 2 * n)
        throw ValidationError("initial state has length " + std::to_string(x0.size()) +
                              ", expected " + std::to_string(2 * n));
    if (!x0.allFinite()) throw ValidationError("initial state must be finite");

    if (!disturbance) {
        return integrate(sys, x0, cfg, [](double v, double, double) { return v; });
    }
    disturbance->validate();
    const SectorDisturbance d = *disturbance;
    return integrate(sys, x0, cfg,
                     [d](double v, double f, double t) { return d.apply(v, f, t); });
}

Eigen::VectorXd uniform_initial_state(std::size_t n, std::uint64_t seed) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(2 * n));
    auto engine = make_engine(seed, 0);
    fill_uniform(x, engine);
    return x;
}

std::vector<PowerSample> energy_diagnostics(const SimResult& result, const NetworkSystem& sys) {
    if (result.units != Units::Normalized)
        throw ValidationError("energy diagnostics need a result in normalized units");
    if (result.powers.cols() != static_cast<Eigen::Index>(sys.size()))
        throw ValidationError("result does not belong to this system");
    std::vector<PowerSample> out;
    out.reserve(result.samples());
    for (std::size_t k = 0; k < result.samples(); ++k)
        out.push_back({result.times[k], result.powers.row(static_cast<Eigen::Index>(k)).sum()});
    return out;
}

void write_csv(std::ostream& out, const SimResult& result, std::span<const std::string> labels) {
    const auto n = result.frequencies.cols();
    if (static_cast<Eigen::Index>(labels.size()) != n)
        throw ValidationError("label count does not match the result width");

    const std::locale saved_locale = out.imbue(std::locale::classic());
    const auto saved_flags = out.flags();
    const auto saved_precision = out.precision(9);
    out.unsetf(std::ios::floatfield);

    out << 't';
    for (const auto& l : labels) out << ",f_" << l;
    for (const auto& l : labels) out << ",P_" << l;
    out << '\n';
    for (std::size_t k = 0; k < result.samples(); ++k) {
        const auto row = static_cast<Eigen::Index>(k);
        out << result.times[k];
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << result.frequencies(row, i);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << result.powers(row, i);
        out << '\n';
    }

    out.precision(saved_precision);
    out.flags(saved_flags);
    out.imbue(saved_locale);
}

std::string_view to_string(Integrator method) {
    return method == Integrator::RK4 ? "rk4" : "euler";
}

std::string_view to_string(SectorShape shape) {
    switch (shape) {
        case SectorShape::Identity: return "identity";
        case SectorShape::PaperSinusoid: return "sinusoid";
        case SectorShape::ClippedLinear: return "clipped";
        case SectorShape::PaperSinusoidAdditive: return "sinusoid-additive";
    }
    return "?";
}

}  // namespace swingnet
