#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "swingnet/error.hpp"
#include "swingnet/graph.hpp"
#include "swingnet/scenario.hpp"

using namespace swingnet;

namespace {

Topology chain(std::size_t n) { return Topology(n, {}, oracle::chain_edges(n)); }

double max_row_sum(const Eigen::MatrixXd& l) { return l.rowwise().sum().cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("topology rejects malformed edges") {
    CHECK_THROWS_AS(Topology(2, {}, {{0, 0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {}, {{0, 1, 1.0}, {1, 0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {}, {{0, 2, 1.0}}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {}, {{0, 1, 0.0}}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {}, {{0, 1, -1.0}}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {"a"}, {}), ValidationError);
    CHECK_THROWS_AS(Topology(2, {"a", "a"}, {}), ValidationError);
}

TEST_CASE("edges are stored with from < to") {
    const Topology t(3, {}, {{2, 0, 1.5}});
    REQUIRE(t.edges().size() == 1);
    CHECK(t.edges()[0].from == 0);
    CHECK(t.edges()[0].to == 2);
    CHECK(t.labels() == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("build_laplacian small examples") {
    const Topology pair(2, {}, {{0, 1, 3.0}});
    Eigen::MatrixXd expected(2, 2);
    expected << 1, -1, -1, 1;
    CHECK(build_laplacian(pair, LaplacianWeights::Unit).entries == expected);
    CHECK(build_laplacian(pair, LaplacianWeights::FromT).entries == 3.0 * expected);

    Eigen::MatrixXd c3(3, 3);
    c3 << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(build_laplacian(chain(3), LaplacianWeights::Unit).entries == c3);

    CHECK_THROWS_AS(build_laplacian(Topology(), LaplacianWeights::Unit), ValidationError);
}

TEST_CASE("bundled Nigerian topology") {
    const auto s = bundled_scenario("nigeria");
    const auto& t = s.topology;
    REQUIRE(t.node_count() == 11);
    CHECK(t.edges().size() == 10);
    CHECK(t.connected());

    const auto l = build_laplacian(t, LaplacianWeights::Unit);
    auto degree = [&](const char* name) { return l.entries(t.index_of(name), t.index_of(name)); };
    CHECK(degree("Gombe") == 4);
    CHECK(degree("Kano") == 3);
    for (const char* n : {"Adamawa", "Bauchi", "Plateau", "Kaduna"}) CHECK(degree(n) == 2);
    for (const char* n : {"Yobe", "Borno", "Taraba", "Jigawa", "Katsina"}) CHECK(degree(n) == 1);

    const auto spec = spectrum(l);
    CHECK(std::abs(spec.max() - 5.1748) <= 5e-4);

    const auto b = degree_bounds(t);
    CHECK(b.d_max == 4);
    CHECK(b.lower == 4.0);
    CHECK(b.upper == 8.0);
}

TEST_CASE("weighted_laplacian examples") {
    const Topology pair(2, {}, {{0, 1, 1.0}});
    const auto l = build_laplacian(pair, LaplacianWeights::Unit);

    const std::vector<double> ones{1.0, 1.0};
    CHECK(weighted_laplacian(l, ones).entries == l.entries);

    const std::vector<double> m{2.0, 1.0};
    Eigen::MatrixXd expected(2, 2);
    expected << 0.5, -0.5, -1, 1;
    CHECK(weighted_laplacian(l, m).entries.isApprox(expected, 0.0));

    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(weighted_laplacian(l, bad), ValidationError);
    const std::vector<double> short_m{1.0};
    CHECK_THROWS_AS(weighted_laplacian(l, short_m), ValidationError);
}

TEST_CASE("weighted spectrum equals the symmetrized one") {
    const auto l = build_laplacian(chain(3), LaplacianWeights::Unit);
    const std::vector<double> m{1.0, 2.0, 1.0};
    const auto w = weighted_laplacian(l, m);
    CHECK(max_row_sum(w.entries) <= 1e-12);

    Eigen::VectorXd s(3);
    s << 1.0, 1.0 / std::sqrt(2.0), 1.0;
    const auto expected = oracle::sym_eigenvalues(s.asDiagonal() * l.entries * s.asDiagonal());
    const auto got = spectrum(w);
    CHECK(got.source == SpectrumSource::WeightedLaplacian);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got.eigenvalues[i] - expected[i]) <= 1e-10);
}

TEST_CASE("spectrum small examples") {
    const auto two = spectrum(build_laplacian(Topology(2, {}, {{0, 1, 1.0}}), LaplacianWeights::Unit));
    CHECK(std::abs(two.eigenvalues[0]) <= 1e-12);
    CHECK(std::abs(two.eigenvalues[1] - 2.0) <= 1e-12);

    const auto three = spectrum(build_laplacian(chain(3), LaplacianWeights::Unit));
    CHECK(std::abs(three.eigenvalues[0]) <= 1e-12);
    CHECK(std::abs(three.eigenvalues[1] - 1.0) <= 1e-12);
    CHECK(std::abs(three.eigenvalues[2] - 3.0) <= 1e-12);

    LaplacianMatrix skew{Eigen::MatrixXd::Zero(2, 2), std::nullopt};
    skew.entries(0, 1) = 1.0;
    CHECK_THROWS_AS(spectrum(skew), ValidationError);
}

TEST_CASE("disconnected graphs report zero multiplicity") {
    const Topology t(5, {}, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK(t.component_count() == 3);
    CHECK_FALSE(t.connected());
    CHECK(spectrum(build_laplacian(t, LaplacianWeights::Unit)).zero_multiplicity() == 3);
}

TEST_CASE("degree bounds examples") {
    const auto b2 = degree_bounds(Topology(2, {}, {{0, 1, 1.0}}));
    CHECK(b2.d_max == 1);
    CHECK(b2.lower == 1.0);
    CHECK(b2.upper == 2.0);
    for (std::size_t n : {3u, 4u, 7u}) {
        const auto b = degree_bounds(chain(n));
        CHECK(b.d_max == 2);
        CHECK(b.upper == 4.0);
    }
}

TEST_CASE("property: random topologies") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 25;
        const bool weighted = trial % 2 == 1;
        const auto edges = oracle::random_connected(n, rng, 0.15, weighted);
        const Topology t(n, {}, edges);

        for (auto w : {LaplacianWeights::Unit, LaplacianWeights::FromT}) {
            const auto l = build_laplacian(t, w);
            CHECK(max_row_sum(l.entries) <= 1e-12);
            CHECK(l.entries.isApprox(l.entries.transpose(), 0.0));
            CHECK(l.entries.isApprox(oracle::laplacian(n, edges, w == LaplacianWeights::FromT), 0.0));
            for (Eigen::Index i = 0; i < l.entries.rows(); ++i)
                for (Eigen::Index j = 0; j < l.entries.cols(); ++j)
                    CHECK((i == j ? l.entries(i, j) >= 0.0 : l.entries(i, j) <= 0.0));
        }

        const auto l = build_laplacian(t, LaplacianWeights::Unit);
        const auto spec = spectrum(l);
        REQUIRE(spec.eigenvalues.size() == n);
        CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
        CHECK(std::abs(spec.eigenvalues.front()) <= 1e-9);
        CHECK(spec.eigenvalues.front() >= -1e-9);
        CHECK(spec.eigenvalues[1] > 1e-9);

        const auto b = degree_bounds(t);
        CHECK(spec.max() >= b.lower - 1e-9);
        CHECK(spec.max() <= b.upper + 1e-9);

        const auto expected = oracle::sym_eigenvalues(l.entries);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(spec.eigenvalues[i] - expected[i]) <= 1e-10);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto permuted = spectrum(build_laplacian(t.permuted(perm), LaplacianWeights::Unit));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(permuted.eigenvalues[i] - spec.eigenvalues[i]) <= 1e-10);
    }
}

TEST_CASE("jacobi matches a library eigensolver on random symmetric matrices") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + trial % 30;
        Eigen::MatrixXd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
        a = (a + a.transpose()).eval();
        const auto got = jacobi_eigenvalues(a);
        const auto expected = oracle::sym_eigenvalues(a);
        const double scale = std::max(1.0, a.norm());
        for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(got[i] - expected[i]) <= 1e-12 * scale * n);
    }
}

TEST_CASE("jacobi gives up after max_sweeps") {
    Eigen::MatrixXd a(3, 3);
    a << 2, 1, 0, 1, 2, 1, 0, 1, 2;
    CHECK_THROWS_AS(jacobi_eigenvalues(a, {1e-30, 1}), ConvergenceError);
}
