#include <doctest.h>

#include <cmath>

#include "test_support.hpp"

using namespace liefact;
using liefact::testing::rel_err;

namespace {

const GeneralizedPolynomial kZero;
const GeneralizedPolynomial kU = GeneralizedPolynomial::monomial(1.0, 1.0);

double max_error_vs(const Trajectory& traj, double (*reference)(double)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        worst = std::max(worst, std::abs(traj.u[i] - reference(traj.tau[i])));
    }
    return worst;
}

double max_error_vs_solution(const Trajectory& traj, const ClosedFormSolution& sol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        worst = std::max(worst, std::abs(traj.u[i] - sol.u(traj.tau[i])));
    }
    return worst;
}

// u0 = 0 solves any equation here since F(0) = 0.
ClosedFormSolution zero_solution() {
    SolutionSpec spec;
    spec.family = "zero";
    return ClosedFormSolution(spec, dvp_pair(0.3, -1.0), [](double) { return 0.0; }, {},
                              {{-std::numeric_limits<double>::infinity(),
                                std::numeric_limits<double>::infinity()}});
}

}  // namespace

TEST_SUITE("numerics.rk4") {

TEST_CASE("harmonic oscillator returns to 1 after one period") {
    const Trajectory traj = integrate_rk4(kZero, kU, 1.0, 0.0, 0.0, 2.0 * M_PI, 1e-3);
    CHECK(std::abs(traj.u.back() - 1.0) <= 1e-10);
    CHECK(std::abs(traj.tau.back() - 2.0 * M_PI) <= 1e-9);
}

TEST_CASE("uniform step spacing") {
    const Trajectory traj = integrate_rk4(kZero, kU, 1.0, 0.0, 0.0, 1.0, 0.3);
    for (std::size_t i = 1; i < traj.tau.size(); ++i) {
        CHECK(std::abs((traj.tau[i] - traj.tau[i - 1]) - traj.h) <= 1e-12);
    }
}

TEST_CASE("tracks the kink seeded exactly from the closed form") {
    const ClosedFormSolution kink = fisher_solution_case1(2.0, SignBranch::plus, 0.0);
    const LienardForm form = fisher_form(2.0, fisher_fit_case1(2.0).nu);
    const Trajectory traj =
        integrate_rk4(form.g, form.F, kink.u(0.0), kink.udot(0.0), 0.0, 5.0, 1e-3);
    CHECK(max_error_vs_solution(traj, kink) <= 1e-8);
}

TEST_CASE("empirical convergence order is 4") {
    // harmonic oscillator control problem (max error along the trajectory,
    // which is dominated by the h^4 phase drift)
    const Trajectory coarse = integrate_rk4(kZero, kU, 1.0, 0.0, 0.0, 2.0 * M_PI, 0.05);
    const Trajectory fine = integrate_rk4(kZero, kU, 1.0, 0.0, 0.0, 2.0 * M_PI, 0.025);
    const double ratio = max_error_vs(coarse, std::cos) / max_error_vs(fine, std::cos);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);

    // and on one kink instance
    const ClosedFormSolution kink = fisher_solution_case1(2.0, SignBranch::plus, 0.0);
    const LienardForm form = fisher_form(2.0, fisher_fit_case1(2.0).nu);
    const Trajectory kc =
        integrate_rk4(form.g, form.F, kink.u(0.0), kink.udot(0.0), 0.0, 5.0, 0.05);
    const Trajectory kf =
        integrate_rk4(form.g, form.F, kink.u(0.0), kink.udot(0.0), 0.0, 5.0, 0.025);
    const double kink_ratio = max_error_vs_solution(kc, kink) / max_error_vs_solution(kf, kink);
    CHECK(kink_ratio >= 12.0);
    CHECK(kink_ratio <= 20.0);
}

TEST_CASE("blow-up guard") {
    // u'' = u grows like e^tau and crosses 1e12 near tau = 27.6
    const GeneralizedPolynomial minus_u = GeneralizedPolynomial::monomial(-1.0, 1.0);
    CHECK_THROWS_AS(integrate_rk4(kZero, minus_u, 1.0, 1.0, 0.0, 40.0, 1e-2), BlowUpError);
}

TEST_CASE("fractional-power violation propagates") {
    const GeneralizedPolynomial sqrt_u = GeneralizedPolynomial::monomial(1.0, 0.5);
    CHECK_THROWS_AS(integrate_rk4(kZero, sqrt_u, -1.0, 0.0, 0.0, 1.0, 1e-2), DomainError);
}

TEST_CASE("parameter guards") {
    CHECK_THROWS_AS(integrate_rk4(kZero, kU, 1.0, 0.0, 0.0, 1.0, 0.0), InvalidParamError);
    CHECK_THROWS_AS(integrate_rk4(kZero, kU, 1.0, 0.0, 1.0, 1.0, 1e-3), InvalidParamError);
}

}  // TEST_SUITE

TEST_SUITE("numerics.residual") {

TEST_CASE("u = 0 has residual exactly zero") {
    const ClosedFormSolution zero = zero_solution();
    const ResidualReport report =
        residual_scan(GeneralizedPolynomial::monomial(3.0, 1.0),
                      GeneralizedPolynomial::monomial(1.0, 3.0), zero, {-5.0, 5.0, 50});
    CHECK(report.pass);
    CHECK(report.max_abs_relative == 0.0);
}

TEST_CASE("emden pole solution on [0.5, 10]") {
    const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, RootBranch::minus, 0.0);
    const ResidualReport report =
        residual_scan(GeneralizedPolynomial::monomial(3.0, 1.0),
                      GeneralizedPolynomial::monomial(1.0, 3.0), sol, {0.5, 10.0, 200});
    CHECK(report.pass);
    CHECK(report.max_abs_relative <= 1e-12);
}

TEST_CASE("a wrong wave speed is caught") {
    const ClosedFormSolution kink = fisher_solution_case1(2.0, SignBranch::plus, 0.0);
    const LienardForm wrong = fisher_form(2.0, fisher_fit_case1(2.0).nu + 0.1);
    const ResidualReport report =
        residual_scan(wrong.g, wrong.F, kink, {-10.0, 10.0, 200});
    CHECK_FALSE(report.pass);
    CHECK(report.max_abs_relative > 1e-3);
}

TEST_CASE("grids touching a singularity are rejected") {
    const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, RootBranch::minus, 0.0);
    CHECK_THROWS_AS(
        residual_scan(kZero, GeneralizedPolynomial::monomial(1.0, 3.0), sol, {-1.0, 1.0, 11}),
        DomainError);
    // inside the domain but within the standoff of the pole
    CHECK_THROWS_AS(residual_scan(kZero, GeneralizedPolynomial::monomial(1.0, 3.0), sol,
                                  {5e-4, 1.0, 10}, 1e-9, 1e-3),
                    DomainError);
}

TEST_CASE("report invariant: pass iff max <= tolerance") {
    const ClosedFormSolution kink = fisher_solution_case1(2.0, SignBranch::plus, 0.0);
    const LienardForm form = fisher_form(2.0, fisher_fit_case1(2.0).nu);
    const ResidualReport report = residual_scan(form.g, form.F, kink, {-10.0, 10.0, 200});
    CHECK(report.pass == (report.max_abs_relative <= report.tolerance_used));
    CHECK(report.grid.size() == 200);
    CHECK(report.residuals.size() == 200);
}

TEST_CASE("grid_for_solution prefers the forward unbounded interval") {
    const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, RootBranch::minus, 0.0);
    const GridSpec grid = grid_for_solution(sol, 100, 10.0, 1e-3);
    CHECK(grid.lo == doctest::Approx(1e-3));
    CHECK(grid.hi == doctest::Approx(20.001));
}

}  // TEST_SUITE

TEST_SUITE("numerics.quadratic") {

TEST_CASE("examples") {
    const QuadraticRoots r = solve_quadratic(2.0, 3.0, 1.0);
    CHECK(r.count == 2);
    CHECK(r.plus == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(r.minus == doctest::Approx(-1.0).epsilon(1e-14));

    const QuadraticRoots dbl = solve_quadratic(1.0, -2.0, 1.0);
    CHECK(dbl.count == 1);
    CHECK(dbl.plus == doctest::Approx(1.0));

    CHECK(solve_quadratic(1.0, 0.0, 1.0).count == 0);
    CHECK_THROWS_AS(solve_quadratic(0.0, 1.0, 1.0), InvalidParamError);
}

TEST_CASE("stability for widely separated roots") {
    const QuadraticRoots r = solve_quadratic(1.0, 1e8, 1.0);
    CHECK(r.count == 2);
    // the small root must not be destroyed by cancellation
    CHECK(rel_err(r.plus, -1e-8) <= 1e-12);
    CHECK(rel_err(r.minus, -1e8) <= 1e-12);
    for (const double root : {r.plus, r.minus}) {
        const double value = root * root + 1e8 * root + 1.0;
        const double scale = root * root + std::abs(1e8 * root) + 1.0;
        CHECK(std::abs(value) / scale <= 1e-14);
    }
}

TEST_CASE("c = 0 keeps the zero root exact") {
    const QuadraticRoots r = solve_quadratic(2.0, 6.0, 0.0);
    CHECK(r.count == 2);
    CHECK(r.plus == 0.0);
    CHECK(r.minus == doctest::Approx(-3.0));
}

}  // TEST_SUITE

TEST_SUITE("numerics.invert") {

TEST_CASE("round trip at the bracket midpoint") {
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 1.0);
    const double u_star = 0.5 * (rel.bracket_lo() + rel.bracket_hi());
    const double tau = rel.tau0() + rel.tau_of(u_star);
    CHECK(std::abs(invert_implicit(rel, tau) - u_star) <= 1e-9);
}

TEST_CASE("the inverted curve obeys du/dtau = a1 F3(u)") {
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 1.0);
    for (const double u_ref : {0.5, 1.0, 2.0}) {
        const double tau = rel.tau0() + rel.tau_of(u_ref);
        const double h = 1e-5;
        const double fd =
            (invert_implicit(rel, tau + h) - invert_implicit(rel, tau - h)) / (2.0 * h);
        const double expected = rel.a1() * rel.F3().evaluate(invert_implicit(rel, tau));
        CHECK(rel_err(fd, expected) <= 1e-7);
    }
}

TEST_CASE("tau outside the image") {
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 1.0);
    const double img_hi = rel.tau0() + rel.tau_of(rel.bracket_lo());  // a1 < 0: tau decreases in u
    CHECK_THROWS_AS(invert_implicit(rel, img_hi + 1.0), OutOfRangeError);
}

TEST_CASE("monotonicity pre-scan rejects a numerically flat bracket") {
    CHECK_THROWS_AS(ImplicitRelation(2.0, 3.0, 1.0, -1.0, 0.0, 10.0, 10.0 + 1e-12),
                    NonMonotonicError);
}

TEST_CASE("implicit_solution behaves like a closed form") {
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 1.0);
    const ClosedFormSolution sol = implicit_solution(rel);
    CHECK(sol.family() == "lienard");
    CHECK(sol.case_tag() == 2);
    REQUIRE(sol.domain().size() == 1);

    const LienardForm form = lienard_form_case2(2.0, 3.0, 1.0, -1.0);
    liefact::testing::check_residual(form, sol);

    // trajectory cross-check inside the image
    const double lo = sol.domain()[0].lo + 0.5;
    const Trajectory traj =
        integrate_rk4(form.g, form.F, sol.u(lo), sol.udot(lo), lo, lo + 5.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        worst = std::max(worst, std::abs(traj.u[i] - sol.u(traj.tau[i])));
    }
    CHECK(worst <= 1e-6);
}

}  // TEST_SUITE
