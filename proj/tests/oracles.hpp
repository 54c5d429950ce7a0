#pragma once

// Reference computations used only by the tests. Nothing here shares code
// with the library.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "swingnet/graph.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd v = es.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

inline std::vector<Complex> eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    const Eigen::VectorXcd v = es.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

/// Greedy multiset match: largest distance between paired elements.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0.0;
    for (const auto& x : a) {
        auto best = b.begin();
        for (auto it = b.begin(); it != b.end(); ++it)
            if (std::abs(*it - x) < std::abs(*best - x)) best = it;
        worst = std::max(worst, std::abs(*best - x));
        b.erase(best);
    }
    return worst;
}

/// Laplacian built straight from an edge list, no validation.
inline Eigen::MatrixXd laplacian(std::size_t n, const std::vector<swingnet::Edge>& edges, bool weighted) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& e : edges) {
        const double w = weighted ? e.sync : 1.0;
        const auto i = static_cast<Eigen::Index>(e.from), j = static_cast<Eigen::Index>(e.to);
        l(i, j) -= w;
        l(j, i) -= w;
        l(i, i) += w;
        l(j, j) += w;
    }
    return l;
}

/// exp(A t) by scaling and squaring a truncated Taylor series.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a, double t) {
    Eigen::MatrixXd x = a * t;
    int squarings = 0;
    const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    x /= std::pow(2.0, squarings);
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd term = result;
    for (int k = 1; k <= 30; ++k) {
        term = (term * x / k).eval();
        result += term;
    }
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

/// G(s) = C^T (sI - A)^-1 B for the single-grid loop, by a generic solve.
inline Eigen::Matrix2cd transfer_by_solve(double m, double d, double t, Complex s) {
    Eigen::Matrix2cd a;
    a << -d / m, 1.0 / m, -t, 0.0;
    Eigen::Matrix2cd b;
    b << 1.0, 0.0, 0.0, t;
    const Eigen::Matrix2cd c = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd resolvent = s * Eigen::Matrix2cd::Identity() - a;
    return c.transpose() * resolvent.partialPivLu().solve(b);
}

inline std::vector<swingnet::Edge> chain_edges(std::size_t n) {
    std::vector<swingnet::Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
    return e;
}

/// Connected random graph: a random spanning tree plus extra edges.
inline std::vector<swingnet::Edge> random_connected(std::size_t n, std::mt19937_64& rng, double extra_p,
                                                    bool random_weights) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<swingnet::Edge> edges;
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    auto weight = [&] { return random_weights ? 0.2 + 2.0 * u(rng) : 1.0; };
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        edges.push_back({j, i, weight()});
        used[j][i] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[i][j] && u(rng) < extra_p) edges.push_back({i, j, weight()});
    return edges;
}

}  // namespace oracle
