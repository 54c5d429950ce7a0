#pragma once

// Micro-grid interconnection topologies, their Laplacians and spectra.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace swingnet {

/// Undirected line between two micro-grids. Stored with `from < to`.
struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    double sync = 1.0;  ///< synchronizing coefficient T_ij (per-unit)

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected weighted graph of micro-grids.
///
/// Edges are canonicalized to `from < to` on construction. Self-loops,
/// duplicate unordered pairs, out-of-range endpoints and nonpositive
/// coefficients are rejected with ValidationError.
class Topology {
public:
    Topology() = default;

    /// Labels may be empty, in which case nodes are named "1".."n".
    Topology(std::size_t node_count, std::vector<std::string> labels,
             std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return node_count_; }
    bool empty() const noexcept { return node_count_ == 0; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// Unweighted degree d_i (number of incident edges).
    std::vector<int> degrees() const;
    /// Sum of incident synchronizing coefficients.
    std::vector<double> weighted_degrees() const;

    std::size_t component_count() const;
    bool connected() const { return component_count() == 1; }

    /// Index of the node with the given label; ValidationError if absent.
    std::size_t index_of(const std::string& label) const;

    /// Same graph with node i moved to position perm[i].
    Topology permuted(std::span<const std::size_t> perm) const;

private:
    std::size_t node_count_ = 0;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
};

enum class LaplacianWeights { Unit, FromT };

/// Dense graph Laplacian. When `inertias` is set the entries are the
/// inertia-weighted form Diag(1/M) L, which is not symmetric but is similar
/// to the symmetric matrix Diag(M^-1/2) L Diag(M^-1/2).
struct LaplacianMatrix {
    Eigen::MatrixXd entries;
    std::optional<Eigen::VectorXd> inertias;

    Eigen::Index size() const noexcept { return entries.rows(); }
    bool weighted() const noexcept { return inertias.has_value(); }
};

enum class SpectrumSource { UnweightedLaplacian, WeightedLaplacian };

/// Laplacian eigenvalues, ascending.
struct Spectrum {
    std::vector<double> eigenvalues;
    SpectrumSource source = SpectrumSource::UnweightedLaplacian;

    double max() const { return eigenvalues.back(); }
    /// Number of eigenvalues within `tol` of zero (connected components).
    std::size_t zero_multiplicity(double tol = 1e-9) const;
};

LaplacianMatrix build_laplacian(const Topology& topo, LaplacianWeights weights);

LaplacianMatrix weighted_laplacian(const LaplacianMatrix& laplacian,
                                   std::span<const double> inertias);

Spectrum spectrum(const LaplacianMatrix& laplacian);

struct DegreeBounds {
    int d_max = 0;
    double lower = 0.0;  ///< d_max
    double upper = 0.0;  ///< 2 d_max
};

/// Degree bracket d_max <= largest Laplacian eigenvalue <= 2 d_max.
DegreeBounds degree_bounds(const Topology& topo);

struct JacobiOptions {
    /// Stop when the off-diagonal Frobenius norm drops below
    /// tolerance * max(1, ||A||_F).
    double tolerance = 1e-12;
    int max_sweeps = 100;
};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Throws ConvergenceError after max_sweeps.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options = {});

}  // namespace swingnet
