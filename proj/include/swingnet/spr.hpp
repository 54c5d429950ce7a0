#pragma once

// Loop transfer function of the single-grid Lur'e system and a numerical
// strict-positive-realness check of Z(s) = I + k G(s).

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "swingnet/classify.hpp"

namespace swingnet {

/// Single grid with sector gain K = k I in the feedback loop.
struct LureSystem {
    GridParams grid;
    double gain = 1.0;  ///< k; zero is allowed and gives Z = I

    void validate() const;
};

/// Delta(s) = s (s + D/M) + T/M, the characteristic polynomial of A.
Complex characteristic(const GridParams& p, Complex s);

/// G(s) = C^T (sI - A)^-1 B from its closed form. Throws PoleProximityError
/// when |Delta(s)| <= 1e-14.
Eigen::Matrix2cd transfer_G(const GridParams& p, Complex s);

/// Z(s) = I + k G(s).
Eigen::Matrix2cd transfer_Z(const LureSystem& sys, Complex s);

/// H(omega) = Z(j omega) + Z(j omega)^H.
Eigen::Matrix2cd hermitian_part(const LureSystem& sys, double omega);

/// Smaller eigenvalue of a 2x2 Hermitian matrix.
double min_hermitian_eigenvalue(const Eigen::Matrix2cd& h);

/// Diagonal numerators of Z(j omega) + Z(-j omega) over |Delta(j omega)|^2:
///   z11 = 2[(w^2 - T/M)^2 + w^2 (D/M)(D/M + k)]
///   z22 = 2[(w^2 - T/M)^2 + w^2 (D/M)^2 + (T/M) k T D / M]
double spr_z11(const LureSystem& sys, double omega);
double spr_z22(const LureSystem& sys, double omega);

struct SweepPoint {
    double omega = 0.0;
    double min_eigenvalue = 0.0;  ///< of H(omega)
    double trace = 0.0;           ///< z11 + z22
};

enum class SprVerdictKind { StrictlyPositiveReal, Violated, Inconclusive };

struct SprVerdict {
    SprVerdictKind kind = SprVerdictKind::Inconclusive;
    /// First grid frequency where H(omega) was not positive definite.
    std::optional<double> omega;
};

struct SprReport {
    bool hurwitz = false;
    std::array<Complex, 2> poles{};
    std::vector<SweepPoint> sweep;
    Eigen::Matrix2d limit = Eigen::Matrix2d::Zero();  ///< Z(inf) + Z(inf)^T
    bool limit_ok = false;                            ///< limit == 2I exactly
    double margin = 0.0;                              ///< min over the sweep of min_eigenvalue
    /// True when some grid point has a positive trace but an indefinite H.
    bool trace_disagrees = false;
    SprVerdict verdict;
};

/// Margins at or below this are reported Inconclusive rather than SPR.
inline constexpr double kSprMarginFloor = 1e-12;

/// `omega_grid` must be nonempty, positive and ascending.
SprReport check_spr(const LureSystem& sys, std::span<const double> omega_grid);

/// `points` logarithmically spaced frequencies in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// The default grid: 200 points in [1e-3, 1e3].
std::vector<double> default_omega_grid();

/// `omega,min_eig,trace` rows followed by a `# verdict=...` summary line.
void write_spr_csv(std::ostream& out, const SprReport& report);

std::string_view to_string(SprVerdictKind kind);

}  // namespace swingnet
