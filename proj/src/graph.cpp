#include "swingnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "swingnet/error.hpp"

namespace swingnet {

namespace {

constexpr double kRowSumTolerance = 1e-12;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// Find with path halving; small graphs only.
std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void check_row_sums(const Eigen::MatrixXd& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (std::abs(m.row(i).sum()) > kRowSumTolerance * scale)
            throw ValidationError("Laplacian row " + std::to_string(i) + " does not sum to zero");
    }
}

}  // namespace

Topology::Topology(std::size_t node_count, std::vector<std::string> labels,
                   std::vector<Edge> edges)
    : node_count_(node_count), labels_(std::move(labels)) {
    if (labels_.empty()) {
        labels_.reserve(node_count_);
        for (std::size_t i = 0; i < node_count_; ++i) labels_.push_back(std::to_string(i + 1));
    }
    if (labels_.size() != node_count_)
        throw ValidationError("topology has " + std::to_string(node_count_) + " nodes but " +
                              std::to_string(labels_.size()) + " labels");
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size())
        throw ValidationError("topology labels must be unique");

    std::set<std::pair<std::size_t, std::size_t>> seen;
    edges_.reserve(edges.size());
    for (Edge e : edges) {
        if (e.from >= node_count_ || e.to >= node_count_)
            throw ValidationError("edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                                  ") references a node outside 0.." +
                                  std::to_string(node_count_ == 0 ? 0 : node_count_ - 1));
        if (e.from == e.to)
            throw ValidationError("self-loop on node '" + labels_[e.from] + "'");
        if (!(e.sync > 0.0) || !std::isfinite(e.sync))
            throw ValidationError("edge " + labels_[e.from] + "-" + labels_[e.to] +
                                  " needs a positive finite synchronizing coefficient");
        if (e.from > e.to) std::swap(e.from, e.to);
        if (!seen.emplace(e.from, e.to).second)
            throw ValidationError("duplicate edge " + labels_[e.from] + "-" + labels_[e.to]);
        edges_.push_back(e);
    }
}

std::vector<int> Topology::degrees() const {
    std::vector<int> d(node_count_, 0);
    for (const auto& e : edges_) {
        ++d[e.from];
        ++d[e.to];
    }
    return d;
}

std::vector<double> Topology::weighted_degrees() const {
    std::vector<double> d(node_count_, 0.0);
    for (const auto& e : edges_) {
        d[e.from] += e.sync;
        d[e.to] += e.sync;
    }
    return d;
}

std::size_t Topology::component_count() const {
    std::vector<std::size_t> parent(node_count_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::size_t components = node_count_;
    for (const auto& e : edges_) {
        auto a = find_root(parent, e.from);
        auto b = find_root(parent, e.to);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

std::size_t Topology::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw ValidationError("unknown node label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

Topology Topology::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != node_count_) throw ValidationError("permutation length mismatch");
    std::vector<std::string> labels(node_count_);
    for (std::size_t i = 0; i < node_count_; ++i) labels.at(perm[i]) = labels_[i];
    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) edges.push_back({perm[e.from], perm[e.to], e.sync});
    return Topology(node_count_, std::move(labels), std::move(edges));
}

std::size_t Spectrum::zero_multiplicity(double tol) const {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues.begin(), eigenvalues.end(),
                      [tol](double v) { return std::abs(v) <= tol; }));
}

LaplacianMatrix build_laplacian(const Topology& topo, LaplacianWeights weights) {
    if (topo.empty()) throw ValidationError("cannot build the Laplacian of an empty topology");
    const auto n = static_cast<Eigen::Index>(topo.node_count());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : topo.edges()) {
        const double w = weights == LaplacianWeights::Unit ? 1.0 : e.sync;
        const auto i = static_cast<Eigen::Index>(e.from);
        const auto j = static_cast<Eigen::Index>(e.to);
        l(i, j) -= w;
        l(j, i) -= w;
        l(i, i) += w;
        l(j, j) += w;
    }
    check_row_sums(l);
    return {std::move(l), std::nullopt};
}

LaplacianMatrix weighted_laplacian(const LaplacianMatrix& laplacian,
                                   std::span<const double> inertias) {
    if (laplacian.weighted())
        throw ValidationError("Laplacian is already inertia-weighted");
    const auto n = laplacian.size();
    if (static_cast<Eigen::Index>(inertias.size()) != n)
        throw ValidationError("expected " + std::to_string(n) + " inertias, got " +
                              std::to_string(inertias.size()));
    Eigen::VectorXd m(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mi = inertias[static_cast<std::size_t>(i)];
        if (!(mi > 0.0) || !std::isfinite(mi))
            throw ValidationError("inertia of node " + std::to_string(i) + " must be positive");
        m(i) = mi;
    }
    Eigen::MatrixXd scaled = m.cwiseInverse().asDiagonal() * laplacian.entries;
    check_row_sums(scaled);
    return {std::move(scaled), std::move(m)};
}

namespace {

// Laplacians are positive semidefinite; roundoff below zero is snapped back.
std::vector<double> clamp_roundoff(std::vector<double> values, double scale) {
    for (auto& v : values)
        if (v < 0.0 && v > -1e-12 * scale) v = 0.0;
    return values;
}

}  // namespace

Spectrum spectrum(const LaplacianMatrix& laplacian) {
    const auto n = laplacian.size();
    if (n == 0) throw ValidationError("empty Laplacian");
    const auto& a = laplacian.entries;

    if (laplacian.weighted()) {
        // Diag(M^1/2) (Diag(1/M) L) Diag(M^-1/2) = Diag(M^-1/2) L Diag(M^-1/2)
        const Eigen::VectorXd root = laplacian.inertias->cwiseSqrt();
        Eigen::MatrixXd sym = root.asDiagonal() * a * root.cwiseInverse().asDiagonal();
        sym = (0.5 * (sym + sym.transpose())).eval();
        const double scale = std::max(1.0, sym.norm());
        return {clamp_roundoff(jacobi_eigenvalues(std::move(sym)), scale), SpectrumSource::WeightedLaplacian};
    }

    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("spectrum requires a symmetric Laplacian or an inertia-weighted one");
    return {clamp_roundoff(jacobi_eigenvalues(a), std::max(1.0, a.norm())), SpectrumSource::UnweightedLaplacian};
}

DegreeBounds degree_bounds(const Topology& topo) {
    if (topo.empty()) throw ValidationError("degree bounds of an empty topology");
    const auto d = topo.degrees();
    const int d_max = *std::max_element(d.begin(), d.end());
    return {d_max, static_cast<double>(d_max), 2.0 * d_max};
}

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw ValidationError("jacobi_eigenvalues needs a square matrix");

    const double threshold = options.tolerance * std::max(1.0, a.norm());
    int sweep = 0;
    while (off_diagonal_norm(a) >= threshold) {
        if (sweep++ >= options.max_sweeps)
            throw ConvergenceError("Jacobi eigensolver did not converge in " +
                                   std::to_string(options.max_sweeps) + " sweeps");
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> values(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(values.begin(), values.end());
    return values;
}

}  // namespace swingnet
