#include "swingnet/spr.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <ostream>

#include "swingnet/error.hpp"

namespace swingnet {

namespace {

constexpr double kPoleTolerance = 1e-14;

}  // namespace

void LureSystem::validate() const {
    grid.validate();
    if (!(gain >= 0.0) || !std::isfinite(gain)) throw ValidationError("sector gain k must be nonnegative");
}

Complex characteristic(const GridParams& p, Complex s) {
    return s * (s + p.damping / p.inertia) + p.sync / p.inertia;
}

Eigen::Matrix2cd transfer_G(const GridParams& p, Complex s) {
    p.validate();
    const Complex delta = characteristic(p, s);
    if (std::abs(delta) <= kPoleTolerance)
        throw PoleProximityError("G(s) evaluated at a pole of the loop");
    const double a = p.damping / p.inertia;
    Eigen::Matrix2cd g;
    g << s, p.sync / p.inertia,
        -p.sync, (s + a) * p.sync;
    return g / delta;
}

Eigen::Matrix2cd transfer_Z(const LureSystem& sys, Complex s) {
    sys.validate();
    return Eigen::Matrix2cd::Identity() + sys.gain * transfer_G(sys.grid, s);
}

Eigen::Matrix2cd hermitian_part(const LureSystem& sys, double omega) {
    const Eigen::Matrix2cd z = transfer_Z(sys, Complex{0.0, omega});
    Eigen::Matrix2cd h = z + z.adjoint();
    // Exact Hermitian structure.
    h(0, 0) = h(0, 0).real();
    h(1, 1) = h(1, 1).real();
    h(1, 0) = std::conj(h(0, 1));
    return h;
}

double min_hermitian_eigenvalue(const Eigen::Matrix2cd& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    return 0.5 * (a + d) - std::hypot(half_gap, std::abs(h(0, 1)));
}

double spr_z11(const LureSystem& sys, double omega) {
    const auto& p = sys.grid;
    const double w2 = omega * omega;
    const double tm = p.sync / p.inertia;
    const double dm = p.damping / p.inertia;
    return 2.0 * ((w2 - tm) * (w2 - tm) + w2 * dm * (dm + sys.gain));
}

double spr_z22(const LureSystem& sys, double omega) {
    const auto& p = sys.grid;
    const double w2 = omega * omega;
    const double tm = p.sync / p.inertia;
    const double dm = p.damping / p.inertia;
    return 2.0 * ((w2 - tm) * (w2 - tm) + w2 * dm * dm + tm * sys.gain * p.sync * dm);
}

SprReport check_spr(const LureSystem& sys, std::span<const double> omega_grid) {
    sys.validate();
    if (omega_grid.empty()) throw ValidationError("frequency grid is empty");
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        if (!(omega_grid[i] > 0.0) || !std::isfinite(omega_grid[i]))
            throw ValidationError("frequency grid must be positive");
        if (i > 0 && omega_grid[i] <= omega_grid[i - 1])
            throw ValidationError("frequency grid must be strictly ascending");
    }

    SprReport report;
    const auto& p = sys.grid;
    report.poles = quadratic_roots(p.damping / p.inertia, p.sync / p.inertia);
    report.hurwitz = report.poles[0].real() < 0.0 && report.poles[1].real() < 0.0;

    // Numerator degree 1 over denominator degree 2: G(inf) vanishes identically.
    const Eigen::Matrix2d g_inf = Eigen::Matrix2d::Zero();
    const Eigen::Matrix2d z_inf = Eigen::Matrix2d::Identity() + sys.gain * g_inf;
    report.limit = z_inf + z_inf.transpose();
    report.limit_ok = report.limit == 2.0 * Eigen::Matrix2d::Identity();

    report.sweep.reserve(omega_grid.size());
    report.margin = std::numeric_limits<double>::infinity();
    std::optional<double> first_violation;
    for (double w : omega_grid) {
        const double lo = min_hermitian_eigenvalue(hermitian_part(sys, w));
        const double trace = spr_z11(sys, w) + spr_z22(sys, w);
        report.sweep.push_back({w, lo, trace});
        report.margin = std::min(report.margin, lo);
        if (lo <= 0.0 && !first_violation) first_violation = w;
        if (lo <= 0.0 && trace > 0.0) report.trace_disagrees = true;
    }

    if (!report.hurwitz || !report.limit_ok) {
        report.verdict = {SprVerdictKind::Violated, std::nullopt};
    } else if (first_violation) {
        report.verdict = {SprVerdictKind::Violated, first_violation};
    } else if (report.margin <= kSprMarginFloor) {
        report.verdict = {SprVerdictKind::Inconclusive, std::nullopt};
    } else {
        report.verdict = {SprVerdictKind::StrictlyPositiveReal, std::nullopt};
    }
    return report;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo)) throw ValidationError("log grid needs 0 < lo < hi");
    if (points < 2) throw ValidationError("log grid needs at least two points");
    std::vector<double> grid(points);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<double> default_omega_grid() { return log_grid(1e-3, 1e3, 200); }

void write_spr_csv(std::ostream& out, const SprReport& report) {
    const std::locale saved_locale = out.imbue(std::locale::classic());
    const auto saved_precision = out.precision(9);
    out << "omega,min_eig,trace\n";
    for (const auto& pt : report.sweep)
        out << pt.omega << ',' << pt.min_eigenvalue << ',' << pt.trace << '\n';
    out << "# verdict=" << to_string(report.verdict.kind);
    if (report.verdict.omega) out << " omega=" << *report.verdict.omega;
    out << " margin=" << report.margin << " hurwitz=" << (report.hurwitz ? "true" : "false")
        << " limit_ok=" << (report.limit_ok ? "true" : "false") << '\n';
    out.precision(saved_precision);
    out.imbue(saved_locale);
}

std::string_view to_string(SprVerdictKind kind) {
    switch (kind) {
        case SprVerdictKind::StrictlyPositiveReal: return "StrictlyPositiveReal";
        case SprVerdictKind::Violated: return "Violated";
        case SprVerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

}  // namespace swingnet
