#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace liefact;
using liefact::testing::check_compatibility;
using liefact::testing::check_residual;
using liefact::testing::rel_err;

TEST_SUITE("families.emden") {

TEST_CASE("fit: alpha=3, beta=1 factors as (2a+1)(a+1)") {
    const EmdenFit fit = emden_fit(3.0, 1.0);
    CHECK(fit.a1_plus == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fit.a1_minus == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_FALSE(fit.double_root);
    // oracle: each root reproduces alpha in the damping identification
    for (double a1 : {fit.a1_plus, fit.a1_minus}) {
        CHECK(rel_err(-std::sqrt(1.0) * (2.0 * a1 * a1 + 1.0) / a1, 3.0) <= 1e-12);
    }
}

TEST_CASE("fit: zero discriminant gives the double root") {
    const double alpha = 2.0 * std::sqrt(2.0);
    const EmdenFit fit = emden_fit(alpha, 1.0);
    CHECK(fit.double_root);
    CHECK(fit.a1_plus == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(fit.a1_plus == fit.a1_minus);
}

TEST_CASE("fit: errors") {
    CHECK_THROWS_AS(emden_fit(1.0, 1.0), ComplexRootsError);
    CHECK_THROWS_AS(emden_fit(3.0, -1.0), InvalidParamError);
    CHECK_THROWS_AS(emden_fit(3.0, 0.0), InvalidParamError);
}

TEST_CASE("fit: both roots negative for alpha > 0 (random sweep)") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> beta_dist(0.05, 4.0);
    std::uniform_real_distribution<double> widen(1.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double beta = beta_dist(rng);
        const double alpha = std::sqrt(8.0 * beta) * widen(rng);
        const EmdenFit fit = emden_fit(alpha, beta);
        CHECK(fit.a1_plus < 0.0);
        CHECK(fit.a1_minus < 0.0);
    }
}

TEST_CASE("case 1 solution: u = 1/tau for the minus root at alpha=3, beta=1") {
    const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, RootBranch::minus, 0.0);
    CHECK(sol.u(2.0) == doctest::Approx(0.5).epsilon(1e-14));
    // residual at tau = 2 cancels analytically: 2/t^3 - 3/t^3 + 1/t^3
    const double u = sol.u(2.0);
    const double res = sol.uddot(2.0) + 3.0 * u * sol.udot(2.0) + u * u * u;
    CHECK(std::abs(res) <= 1e-14);

    REQUIRE(sol.singularities().size() == 1);
    CHECK(sol.singularities()[0] == 0.0);
    CHECK(sol.domain().size() == 2);
    CHECK_FALSE(sol.in_domain(0.0));
    CHECK_THROWS_AS(sol.u(0.0), DomainError);
}

TEST_CASE("case 1 solution: unit offset gives -1/(a1 sqrt(beta))") {
    for (const RootBranch branch : {RootBranch::plus, RootBranch::minus}) {
        const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, branch, 0.5);
        const double a1 = sol.fitted();
        CHECK(sol.u(1.5) == doctest::Approx(-1.0 / a1).epsilon(1e-14));
    }
}

TEST_CASE("case 1: residual and compatibility for both branches") {
    for (const RootBranch branch : {RootBranch::plus, RootBranch::minus}) {
        const ClosedFormSolution sol = emden_solution_case1(3.0, 1.0, branch, 0.0);
        check_residual(emden_form(3.0, 1.0), sol);
        check_compatibility(sol);
    }
}

TEST_CASE("case 2 solution: value, domain, induced dvp member") {
    const ClosedFormSolution sol = emden_solution_case2(1.0, -1.0, 0.0);
    CHECK(sol.u(1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sol.in_domain(0.5));
    CHECK_FALSE(sol.in_domain(-0.5));  // a1 < 0 puts the domain at tau > tau0

    CHECK(sol.derived().at("G") == 1.0);
    CHECK(sol.derived().at("E") == 3.0);
    CHECK(sol.derived().at("A") == 0.0);
    CHECK(sol.derived().at("GE") == 3.0);  // = 3 beta, exactly

    // oracle: dvp_fit at the induced parameters returns the same a1
    const DvpFit cross = dvp_fit(sol.derived().at("E"), 0.0);
    CHECK(cross.a1 == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(cross.G == doctest::Approx(1.0).epsilon(1e-14));

    check_residual(dvp_form(1.0, 3.0, 0.0), sol);
    check_compatibility(sol);
    CHECK_THROWS_AS(emden_solution_case2(1.0, 0.0, 0.0), InvalidParamError);
}

}  // TEST_SUITE

TEST_SUITE("families.lienard") {

TEST_CASE("delta and discriminant guard") {
    CHECK(lienard_delta(2.0, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(lienard_delta(1.0, 1.0, 1.0), DiscriminantError);
}

TEST_CASE("hand-transcribed damping matches compose for both cases") {
    for (double a1 : {-1.0, 0.7, 2.0}) {
        CHECK(verify_factorization(lienard_form_case1(2.0, 3.0, 1.0, a1),
                                   lienard_pair_case1(2.0, 3.0, 1.0, a1), 1e-12));
        CHECK(verify_factorization(lienard_form_case2(2.0, 3.0, 1.0, a1),
                                   lienard_pair_case2(2.0, 3.0, 1.0, a1), 1e-12));
    }
}

TEST_CASE("case 1 solution: pole location and values") {
    // A=2, B=3, C=1: Delta=1, (B+Delta)/2 = 2; a1=-1 gives u = 2/(e^{2 tau} - 1)
    const ClosedFormSolution sol =
        lienard_solution_case1(2.0, 3.0, 1.0, -1.0, 0.0, SignBranch::plus);
    REQUIRE(sol.singularities().size() == 1);
    CHECK(sol.singularities()[0] == doctest::Approx(0.0));
    CHECK(sol.u(1.0) == doctest::Approx(2.0 / (std::exp(2.0) - 1.0)).epsilon(1e-14));
    CHECK(sol.in_domain(0.5));
    CHECK(sol.in_domain(-0.5));
    CHECK_FALSE(sol.in_domain(0.0));
}

TEST_CASE("case 1 solution: asymptote is a root of F3") {
    const ClosedFormSolution sol =
        lienard_solution_case1(2.0, 3.0, 1.0, -1.0, 0.0, SignBranch::plus);
    // exp -> 0 as tau -> -inf here, so u -> -(B+Delta)/(2C) = -2
    const double asym = -(3.0 + 1.0) / 2.0;
    CHECK(sol.u(-20.0) == doctest::Approx(asym).epsilon(1e-8));
    CHECK(std::abs(lienard_f3(2.0, 3.0, 1.0).evaluate(asym)) <= 1e-12);
}

TEST_CASE("case 1: both sign branches verify") {
    for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
        const ClosedFormSolution sol =
            lienard_solution_case1(2.0, 3.0, 1.0, -1.0, 0.0, sign);
        check_residual(lienard_form_case1(2.0, 3.0, 1.0, -1.0), sol);
        check_compatibility(sol);
    }
    // minus sign with C > 0 has no pole
    const ClosedFormSolution sol =
        lienard_solution_case1(2.0, 3.0, 1.0, -1.0, 0.0, SignBranch::minus);
    CHECK(sol.singularities().empty());
    CHECK(sol.u(0.0) == doctest::Approx(2.0 / (-1.0 - 1.0)).epsilon(1e-14));
}

TEST_CASE("case 1: parameter guards") {
    CHECK_THROWS_AS(lienard_solution_case1(2.0, 3.0, 0.0, -1.0, 0.0, SignBranch::plus),
                    InvalidParamError);
    CHECK_THROWS_AS(lienard_solution_case1(2.0, 3.0, 1.0, 0.0, 0.0, SignBranch::plus),
                    InvalidParamError);
    CHECK_THROWS_AS(lienard_solution_case1(1.0, 1.0, 1.0, -1.0, 0.0, SignBranch::plus),
                    DiscriminantError);
}

TEST_CASE("implicit relation: dtau/du matches 1/(a1 F3) (finite differences)") {
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 1.0);
    // 50 points of the bracket away from the endpoints
    for (int i = 0; i < 50; ++i) {
        const double u = 0.1 + (5.0 - 0.1) * i / 49.0;
        const double h = 1e-6 * (1.0 + u);
        const double fd = (rel.tau_of(u + h) - rel.tau_of(u - h)) / (2.0 * h);
        CHECK(std::abs(fd - rel.dtau_du(u)) / std::abs(rel.dtau_du(u)) <= 1e-8);
    }
}

TEST_CASE("implicit relation: brackets on the negative side work too") {
    // (-1, 0) is a valid gap for A=2, B=3, C=1
    const ImplicitRelation rel = lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, -0.5);
    CHECK(rel.bracket_lo() > -1.0);
    CHECK(rel.bracket_hi() < 0.0);
    const double mid = 0.5 * (rel.bracket_lo() + rel.bracket_hi());
    CHECK(std::isfinite(rel.tau_of(mid)));
}

TEST_CASE("implicit relation: guards") {
    CHECK_THROWS_AS(lienard_implicit_case2(0.0, 3.0, 1.0, -1.0, 0.0, 1.0), InvalidParamError);
    CHECK_THROWS_AS(lienard_implicit_case2(2.0, 3.0, 1.0, 0.0, 0.0, 1.0), InvalidParamError);
    CHECK_THROWS_AS(lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, 0.0), InvalidParamError);
    // between the roots of A + Bu + Cu^2 both logarithms go complex
    CHECK_THROWS_AS(lienard_implicit_case2(2.0, 3.0, 1.0, -1.0, 0.0, -1.5), InvalidParamError);
    CHECK_THROWS_AS(lienard_implicit_case2(1.0, 1.0, 1.0, -1.0, 0.0, 1.0), DiscriminantError);
}

}  // TEST_SUITE

TEST_SUITE("families.dvp") {

TEST_CASE("fit: E=3, A=1/3 and the reduced correspondence") {
    const DvpFit fit = dvp_fit(3.0, 1.0 / 3.0);
    CHECK(fit.a1 == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(fit.G == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(fit.special_A_3_over_E2);  // A = 3/E^2 holds exactly here

    CHECK_FALSE(dvp_fit(3.0, 1.0).special_A_3_over_E2);
    CHECK_THROWS_AS(dvp_fit(0.0, 1.0), InvalidParamError);
}

TEST_CASE("solution: domain side, values, both signs") {
    const ClosedFormSolution plus = dvp_solution(3.0, 1.0 / 3.0, SignBranch::plus, 0.0);
    // a1=-1, A=1/3: rate q = -2/3 < 0 and A > 0, so the domain is tau > tau0
    CHECK(plus.in_domain(0.5));
    CHECK_FALSE(plus.in_domain(-0.5));
    const double x = std::exp(-2.0 / 3.0 * 0.5);
    CHECK(plus.u(0.5) ==
          doctest::Approx(std::sqrt((1.0 / 3.0) * x / (1.0 - x))).epsilon(1e-14));

    const ClosedFormSolution minus = dvp_solution(3.0, 1.0 / 3.0, SignBranch::minus, 0.0);
    CHECK(minus.u(0.5) == doctest::Approx(-plus.u(0.5)).epsilon(1e-14));
}

TEST_CASE("solution: compatibility at 100 domain points (1e-9)") {
    for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
        const ClosedFormSolution sol = dvp_solution(3.0, 1.0 / 3.0, sign, 0.0);
        check_compatibility(sol, 1e-9, 100, 1.0);
    }
}

TEST_CASE("solution: tail asymptotics |u| ~ sqrt(A) exp(-(1/3) A E (tau - tau0))") {
    const double A = 1.0 / 3.0;
    const double E = 3.0;
    const ClosedFormSolution sol = dvp_solution(E, A, SignBranch::plus, 0.0);
    const double tau = 15.0;
    const double expected = std::sqrt(A) * std::exp(-A * E / 3.0 * tau);
    CHECK(rel_err(sol.u(tau), expected) <= 1e-6);
}

TEST_CASE("solution: residual in the full equation with fitted (a1, G)") {
    const DvpFit fit = dvp_fit(3.0, 1.0 / 3.0);
    for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
        const ClosedFormSolution sol = dvp_solution(3.0, 1.0 / 3.0, sign, 0.0);
        check_residual(dvp_form(fit.G, 3.0, 1.0 / 3.0), sol);
    }
}

TEST_CASE("A = 0 is rejected and redirected") {
    CHECK_THROWS_WITH_AS(dvp_solution(3.0, 0.0, SignBranch::plus, 0.0),
                         doctest::Contains("emden case 2"), InvalidParamError);
}

TEST_CASE("negative A puts the domain on the other side") {
    // A < 0, a1 = -E/3 = -1, q = 2 a1 A > 0: domain tau > tau0 where X > 1
    const ClosedFormSolution sol = dvp_solution(3.0, -0.5, SignBranch::plus, 0.0);
    CHECK(sol.in_domain(1.0));
    CHECK_FALSE(sol.in_domain(-1.0));
    CHECK(sol.u(25.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));  // -> sqrt(-A)
    check_residual(compose(sol.pair()), sol);
}

}  // TEST_SUITE

TEST_SUITE("families.fisher") {

TEST_CASE("fit case 1: mu=2 and the wave-speed minimum at mu=sqrt(2)") {
    const FisherFit fit = fisher_fit_case1(2.0);
    CHECK(fit.a1 == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(fit.nu == doctest::Approx(1.5).epsilon(1e-14));
    CHECK_FALSE(fit.nu_derived);

    const double nu_min = fisher_fit_case1(std::sqrt(2.0)).nu;
    CHECK(nu_min == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // calculus check: nu(mu) has its minimum at mu = sqrt(2)
    for (double mu : {0.5, 1.0, 1.2, 1.6, 2.0, 5.0}) {
        CHECK(fisher_fit_case1(mu).nu >= nu_min - 1e-15);
    }
    CHECK_THROWS_AS(fisher_fit_case1(0.0), InvalidParamError);
    CHECK_THROWS_AS(fisher_fit_case1(-1.0), InvalidParamError);
}

TEST_CASE("fit case 1: pair composes to g = 2(nu - mu u)") {
    const FisherFit fit = fisher_fit_case1(2.0);
    CHECK(verify_factorization(fisher_form(2.0, fit.nu), fisher_pair_case1(fit.a1), 1e-12));
}

TEST_CASE("fit case 2: a1 = -sqrt(2) mu and the derived nu") {
    const FisherFit fit = fisher_fit_case2(1.0);
    CHECK(fit.a1 == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(fit.nu_derived);
    // independent transcription of the composed damping: nu = mu + 1/(2 mu)
    for (double mu : {0.5, 1.0, 2.0, 3.7}) {
        const FisherFit f = fisher_fit_case2(mu);
        CHECK(rel_err(f.nu, mu + 1.0 / (2.0 * mu)) <= 1e-14);
        // the u-coefficient of the composed damping must be -2 mu
        const double coeff = compose(fisher_pair_case2(f.a1)).g.coefficient(1.0);
        CHECK(rel_err(coeff, -2.0 * mu) <= 1e-12);
    }
}

TEST_CASE("solution case 1: kink midpoint, limits, pole branch") {
    const ClosedFormSolution kink = fisher_solution_case1(2.0, SignBranch::plus, 0.0);
    CHECK(kink.u(0.0) == 0.5);
    CHECK(kink.u(-30.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kink.u(30.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kink.domain().size() == 1);
    CHECK(kink.singularities().empty());

    const ClosedFormSolution pole = fisher_solution_case1(2.0, SignBranch::minus, 0.0);
    REQUIRE(pole.singularities().size() == 1);
    CHECK(pole.singularities()[0] == 0.0);
    CHECK(pole.u(1.0) == doctest::Approx(1.0 / (1.0 - std::exp(2.0))).epsilon(1e-14));
}

TEST_CASE("solution case 1: residual at the fitted wave speed") {
    const FisherFit fit = fisher_fit_case1(2.0);
    for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
        const ClosedFormSolution sol = fisher_solution_case1(2.0, sign, 0.0);
        check_residual(fisher_form(2.0, fit.nu), sol);
        check_compatibility(sol);
    }
}

TEST_CASE("solution case 2: pure exponential") {
    for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
        const ClosedFormSolution sol = fisher_solution_case2(2.0, sign, 0.0);
        const double expected = sign == SignBranch::plus ? 1.0 : -1.0;
        CHECK(sol.u(0.0) == doctest::Approx(expected).epsilon(1e-14));
        // udot/u = -1/mu everywhere
        for (double tau : {-3.0, -1.0, 0.0, 2.0, 6.0}) {
            CHECK(rel_err(sol.udot(tau) / sol.u(tau), -0.5) <= 1e-14);
        }
        check_residual(fisher_form(2.0, sol.derived().at("nu")), sol);
        check_compatibility(sol);
    }
}

}  // TEST_SUITE

TEST_SUITE("families.burgers-huxley") {

TEST_CASE("fit case 1: alpha=1, beta=1, delta=1") {
    const BhFitCase1 fit = bh_fit_case1(1.0, 1.0, 1.0);
    CHECK(fit.a1_plus == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fit.a1_minus == doctest::Approx(-1.0).epsilon(1e-14));
    // nu identification at a1 = 0.5, gamma = 2: -(0.5 - 4) = 3.5
    CHECK(fit.nu(0.5, 2.0) == doctest::Approx(3.5).epsilon(1e-14));
    CHECK_THROWS_AS(bh_fit_case1(1.0, 0.0, 1.0), InvalidParamError);
    CHECK_THROWS_AS(bh_fit_case1(1.0, 1.0, -2.0), InvalidParamError);
}

TEST_CASE("fit case 1: roots are always real (random sweep)") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> alpha_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> beta_dist(0.05, 5.0);
    std::uniform_real_distribution<double> delta_dist(0.1, 3.0);
    for (int i = 0; i < 1000; ++i) {
        const BhFitCase1 fit = bh_fit_case1(alpha_dist(rng), beta_dist(rng), delta_dist(rng));
        CHECK(std::isfinite(fit.a1_plus));
        CHECK(std::isfinite(fit.a1_minus));
        CHECK(fit.a1_plus != fit.a1_minus);
    }
}

TEST_CASE("fit case 2: alpha=1, beta=1, delta=1 and the delta=1 closed form") {
    const BhFitCase2 fit = bh_fit_case2(1.0, 1.0, 1.0);
    CHECK(fit.e1_plus == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.e1_minus == doctest::Approx(-0.5).epsilon(1e-14));

    // general-delta quadratic at delta = 1 against the printed closed form
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> alpha_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> beta_dist(0.05, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double alpha = alpha_dist(rng);
        const double beta = beta_dist(rng);
        const BhFitCase2 f = bh_fit_case2(alpha, beta, 1.0);
        const double sqb = std::sqrt(beta);
        const double disc = std::sqrt(alpha * alpha + 8.0 * beta);
        CHECK(rel_err(f.e1_plus, (alpha + disc) / (4.0 * sqb)) <= 1e-12);
        CHECK(rel_err(f.e1_minus, (alpha - disc) / (4.0 * sqb)) <= 1e-12);
    }
}

TEST_CASE("pairs compose to the identified damping") {
    for (double delta : {1.0, 2.0, 1.5}) {
        const double alpha = 1.0;
        const double beta = 1.0;
        const double gamma = 0.3;
        const BhFitCase1 f1 = bh_fit_case1(alpha, beta, delta);
        for (double a1 : {f1.a1_plus, f1.a1_minus}) {
            CHECK(verify_factorization(bh_form(alpha, beta, gamma, delta, f1.nu(a1, gamma)),
                                       bh_pair_case1(beta, gamma, delta, a1), 1e-12));
        }
        const BhFitCase2 f2 = bh_fit_case2(alpha, beta, delta);
        for (double e1 : {f2.e1_plus, f2.e1_minus}) {
            CHECK(verify_factorization(bh_form(alpha, beta, gamma, delta, f2.nu(e1, gamma)),
                                       bh_pair_case2(beta, gamma, delta, e1), 1e-12));
        }
    }
}

TEST_CASE("solution case 1: kink midpoint and asymptotics") {
    for (double delta : {1.0, 2.0}) {
        const ClosedFormSolution sol =
            bh_solution_case1(1.0, 1.0, 0.3, delta, RootBranch::plus, SignBranch::plus, 0.0);
        CHECK(sol.u(0.0) == doctest::Approx(std::pow(2.0, -1.0 / delta)).epsilon(1e-14));
        // a1 > 0 for the plus root here, so u(+inf) = 1 and u(-inf) = 0
        CHECK(sol.fitted() > 0.0);
        CHECK(sol.u(80.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sol.u(-80.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("solution case 1: minus-sign domain depends on delta") {
    // delta = 1: u = (1 - X)^{-1} keeps the signed identity u^delta = (1-X)^{-1}
    // on the negative-base side too
    const ClosedFormSolution d1 =
        bh_solution_case1(1.0, 1.0, 0.3, 1.0, RootBranch::plus, SignBranch::minus, 0.0);
    CHECK(d1.domain().size() == 2);
    // delta = 2: (1 - X)^(-1/2) needs a positive base
    const ClosedFormSolution d2 =
        bh_solution_case1(1.0, 1.0, 0.3, 2.0, RootBranch::plus, SignBranch::minus, 0.0);
    CHECK(d2.domain().size() == 1);
    // delta = 1/2: (1 - X)^{-2} is real for a negative base, but the real
    // even root gives u^delta = |1-X|^{-1} and leaves the compatible flow,
    // so only the positive-base side is admissible
    const ClosedFormSolution dhalf =
        bh_solution_case1(1.0, 1.0, 0.3, 0.5, RootBranch::plus, SignBranch::minus, 0.0);
    CHECK(dhalf.domain().size() == 1);
}

TEST_CASE("solution case 1: residuals for both roots at delta in {1, 2}") {
    for (double delta : {1.0, 2.0}) {
        const BhFitCase1 fit = bh_fit_case1(1.0, 1.0, delta);
        for (const RootBranch root : {RootBranch::plus, RootBranch::minus}) {
            for (const SignBranch sign : {SignBranch::plus, SignBranch::minus}) {
                const ClosedFormSolution sol =
                    bh_solution_case1(1.0, 1.0, 0.3, delta, root, sign, 0.0);
                const double nu = fit.nu(sol.fitted(), 0.3);
                check_residual(bh_form(1.0, 1.0, 0.3, delta, nu), sol);
                check_compatibility(sol);
            }
        }
    }
}

TEST_CASE("solution case 2: midpoint, asymptote, residuals") {
    const ClosedFormSolution sol =
        bh_solution_case2(1.0, 1.0, 0.3, 1.0, RootBranch::plus, SignBranch::plus, 0.0);
    CHECK(sol.u(0.0) == doctest::Approx(0.15).epsilon(1e-14));  // (gamma/2)^{1/delta}
    // e1 sqrt(b) gamma delta > 0 for the plus root: X -> 0 backwards, u -> gamma^{1/delta}
    CHECK(sol.u(-80.0) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(sol.u(120.0) == doctest::Approx(0.0).epsilon(1e-12));

    for (double gamma : {0.5, 0.3}) {
        const BhFitCase2 fit = bh_fit_case2(1.0, 1.0, 1.0);
        for (const RootBranch root : {RootBranch::plus, RootBranch::minus}) {
            const ClosedFormSolution s =
                bh_solution_case2(1.0, 1.0, gamma, 1.0, root, SignBranch::plus, 0.0);
            check_residual(bh_form(1.0, 1.0, gamma, 1.0, fit.nu(s.fitted(), gamma)), s);
            check_compatibility(s);
        }
    }
    CHECK_THROWS_AS(
        bh_solution_case2(1.0, 1.0, 0.0, 1.0, RootBranch::plus, SignBranch::plus, 0.0),
        InvalidParamError);
}

TEST_CASE("fractional delta works end to end") {
    const double delta = 1.5;
    const BhFitCase1 fit = bh_fit_case1(1.0, 1.0, delta);
    const ClosedFormSolution sol =
        bh_solution_case1(1.0, 1.0, 0.3, delta, RootBranch::minus, SignBranch::plus, 0.0);
    check_residual(bh_form(1.0, 1.0, 0.3, delta, fit.nu(sol.fitted(), 0.3)), sol);
    check_compatibility(sol);
}

}  // TEST_SUITE
