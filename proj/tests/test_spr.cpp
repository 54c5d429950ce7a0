#include "doctest.h"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "swingnet/error.hpp"
#include "swingnet/spr.hpp"

using namespace swingnet;

namespace {

const GridParams kUnit{1.0, 1.0, 1.0};
const Complex j{0.0, 1.0};

bool near(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, double tol) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("transfer_G examples") {
    Eigen::Matrix2cd at0;
    at0 << 0.0, 1.0, -1.0, 1.0;
    CHECK(near(transfer_G(kUnit, 0.0), at0, 1e-15));

    Eigen::Matrix2cd atj;
    atj << j, 1.0, -1.0, j + 1.0;
    atj /= j;
    CHECK(near(transfer_G(kUnit, j), atj, 1e-15));
    CHECK(characteristic(kUnit, j) == j);

    CHECK(transfer_G(kUnit, 1e12).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("transfer_G refuses to evaluate at a pole") {
    const Complex pole{-0.5, std::sqrt(3.0) / 2.0};
    CHECK_THROWS_AS(transfer_G(kUnit, pole), PoleProximityError);
}

TEST_CASE("property: closed-form G matches a linear solve") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 5.0), s(-5.0, 5.0);
    int checked = 0;
    while (checked < 100) {
        const GridParams p{u(rng), u(rng), u(rng)};
        const Complex z{s(rng), s(rng)};
        if (std::abs(characteristic(p, z)) < 1e-3) continue;
        const auto got = transfer_G(p, z);
        const auto expected = oracle::transfer_by_solve(p.inertia, p.damping, p.sync, z);
        CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
        ++checked;
    }
}

TEST_CASE("transfer_Z") {
    const LureSystem zero{kUnit, 0.0};
    for (Complex z : {Complex(0.0, 0.3), Complex(2.0, -1.0), Complex(0.0, 100.0)})
        CHECK(transfer_Z(zero, z) == Eigen::Matrix2cd::Identity());
    const LureSystem two{kUnit, 2.0};
    CHECK(near(transfer_Z(two, j), Eigen::Matrix2cd::Identity() + 2.0 * transfer_G(kUnit, j), 0.0));
}

TEST_CASE("closed-form z11 and z22") {
    const LureSystem sys{kUnit, 1.0};
    CHECK(spr_z11(sys, 1.0) == 4.0);
    CHECK(spr_z22(sys, 1.0) == 4.0);
}

TEST_CASE("property: hermitian part, trace identity and z11 positivity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.1, 5.0), lw(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const LureSystem sys{{u(rng), u(rng), u(rng)}, u(rng)};
        const double w = std::pow(10.0, lw(rng));
        const auto h = hermitian_part(sys, w);
        CHECK(h(0, 1) == std::conj(h(1, 0)));
        CHECK(h(0, 0).imag() == 0.0);
        CHECK(h(1, 1).imag() == 0.0);

        const Eigen::Matrix2cd z = transfer_Z(sys, Complex(0.0, w));
        CHECK(near(h, z + z.adjoint(), 1e-12 * std::max(1.0, z.cwiseAbs().maxCoeff())));

        const double delta2 = std::norm(characteristic(sys.grid, Complex(0.0, w)));
        const double closed_form = spr_z11(sys, w) + spr_z22(sys, w);
        const double direct = delta2 * h.trace().real();
        CHECK(std::abs(closed_form - direct) <= 1e-9 * std::abs(closed_form));

        CHECK(spr_z11(sys, w) > 0.0);

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
        CHECK(std::abs(min_hermitian_eigenvalue(h) - es.eigenvalues()(0)) <= 1e-12 * std::max(1.0, h.norm()));
    }
}

TEST_CASE("check_spr on the unit grid") {
    for (double k : {0.5, 1.0, 2.0}) {
        const auto r = check_spr({kUnit, k}, default_omega_grid());
        CHECK(r.hurwitz);
        CHECK(std::abs(r.poles[0] - Complex(-0.5, 0.8660254)) <= 1e-6);
        CHECK(std::abs(r.poles[1] - Complex(-0.5, -0.8660254)) <= 1e-6);
        CHECK(r.limit == 2.0 * Eigen::Matrix2d::Identity());
        CHECK(r.limit_ok);
        CHECK(r.sweep.size() == 200);
        CHECK(r.margin > 0.0);
        CHECK(r.verdict.kind == SprVerdictKind::StrictlyPositiveReal);
    }
}

TEST_CASE("zero gain gives H = 2I") {
    const LureSystem sys{{2.0, 0.3, 7.0}, 0.0};
    const auto r = check_spr(sys, default_omega_grid());
    for (const auto& p : r.sweep) CHECK(p.min_eigenvalue == 2.0);
    CHECK(r.verdict.kind == SprVerdictKind::StrictlyPositiveReal);
}

TEST_CASE("an indefinite hermitian part is reported as a violation") {
    // Positive trace everywhere but H is indefinite near the natural frequency.
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    bool found = false;
    for (int i = 0; i < 200 && !found; ++i) {
        const LureSystem sys{{u(rng), u(rng), u(rng)}, u(rng)};
        const auto r = check_spr(sys, default_omega_grid());
        if (r.verdict.kind != SprVerdictKind::Violated) continue;
        found = true;
        REQUIRE(r.verdict.omega.has_value());
        CHECK(r.margin <= 0.0);
        CHECK(r.trace_disagrees);
        const auto first = std::find_if(r.sweep.begin(), r.sweep.end(),
                                        [](const SweepPoint& p) { return p.min_eigenvalue <= 0.0; });
        CHECK(first->omega == *r.verdict.omega);
    }
    CHECK(found);
}

TEST_CASE("verdict is stable under grid refinement") {
    const LureSystem sys{kUnit, 1.0};
    const auto coarse = check_spr(sys, log_grid(1e-3, 1e3, 200));
    const auto fine = check_spr(sys, log_grid(1e-3, 1e3, 2000));
    CHECK(coarse.verdict.kind == fine.verdict.kind);
    CHECK(std::abs(coarse.margin - fine.margin) <= 1e-3 * coarse.margin);
}

TEST_CASE("grid validation") {
    const LureSystem sys{kUnit, 1.0};
    CHECK_THROWS_AS(check_spr(sys, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(check_spr(sys, std::vector<double>{1.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(check_spr(sys, std::vector<double>{-1.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(check_spr({kUnit, -1.0}, default_omega_grid()), ValidationError);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), ValidationError);

    const auto g = log_grid(1e-3, 1e3, 200);
    CHECK(g.size() == 200);
    CHECK(g.front() == doctest::Approx(1e-3));
    CHECK(g.back() == doctest::Approx(1e3));
}

TEST_CASE("spr csv") {
    const auto r = check_spr({kUnit, 1.0}, log_grid(0.1, 10.0, 3));
    std::ostringstream out;
    write_spr_csv(out, r);
    const auto text = out.str();
    CHECK(text.rfind("omega,min_eig,trace\n", 0) == 0);
    CHECK(text.find("# verdict=StrictlyPositiveReal") != std::string::npos);
}
