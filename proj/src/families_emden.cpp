#include <cmath>

#include "family_util.hpp"
#include "liefact/families.hpp"
#include "liefact/numerics.hpp"

namespace liefact {

using detail::kInf;
using detail::require;

EmdenFit emden_fit(double alpha, double beta) {
    require(beta > 0.0, "emden requires beta > 0");
    const double sqb = std::sqrt(beta);
    const double disc = alpha * alpha - 8.0 * beta;
    // Snap a discriminant that vanishes up to rounding (alpha = 2 sqrt(2 beta)
    // is not exactly representable) to the double root.
    const double snap = 1e-12 * std::max(std::max(1.0, alpha * alpha), 8.0 * beta);

    EmdenFit fit;
    if (disc < -snap) {
        throw ComplexRootsError("no real factorization (alpha^2 < 8 beta)");
    }
    if (disc <= snap) {
        fit.a1_plus = fit.a1_minus = -alpha / (4.0 * sqb);
        fit.double_root = true;
    } else {
        // alpha = -sqrt(beta)(2 a1^2 + 1)/a1  <=>  2 sqrt(b) a1^2 + alpha a1 + sqrt(b) = 0
        const QuadraticRoots roots = solve_quadratic(2.0 * sqb, alpha, sqb);
        fit.a1_plus = roots.plus;
        fit.a1_minus = roots.minus;
    }

    for (const double a1 : {fit.a1_plus, fit.a1_minus}) {
        const double back = -sqb * (2.0 * a1 * a1 + 1.0) / a1;
        if (std::abs(back - alpha) > 1e-12 * std::max(1.0, std::abs(alpha))) {
            throw std::logic_error("emden_fit: back-substitution failed to reproduce alpha");
        }
        if (alpha > 0.0 && a1 >= 0.0) {
            throw std::logic_error("emden_fit: root sign violates a1 < 0 for alpha > 0");
        }
    }
    return fit;
}

FactorPair emden_pair_case1(double beta, double a1) {
    require(beta > 0.0, "emden requires beta > 0");
    require(a1 != 0.0, "a1 must be nonzero");
    const double sqb = std::sqrt(beta);
    return FactorPair(GeneralizedPolynomial::monomial(a1 * sqb, 1.0),
                      GeneralizedPolynomial::monomial(sqb / a1, 1.0));
}

FactorPair emden_pair_case2(double beta, double a1) {
    require(beta > 0.0, "emden requires beta > 0");
    require(a1 != 0.0, "a1 must be nonzero");
    const double sqb = std::sqrt(beta);
    return FactorPair(GeneralizedPolynomial::monomial(a1 * sqb, 2.0),
                      GeneralizedPolynomial::constant(sqb / a1));
}

LienardForm emden_form(double alpha, double beta) {
    require(beta > 0.0, "emden requires beta > 0");
    return LienardForm(GeneralizedPolynomial::monomial(alpha, 1.0),
                       GeneralizedPolynomial::monomial(beta, 3.0));
}

ClosedFormSolution emden_solution_case1(double alpha, double beta, RootBranch branch,
                                        double tau0) {
    const EmdenFit fit = emden_fit(alpha, beta);
    const double a1 = branch == RootBranch::plus ? fit.a1_plus : fit.a1_minus;
    const double pole_coeff = -1.0 / (a1 * std::sqrt(beta));

    SolutionSpec spec;
    spec.family = "emden";
    spec.case_tag = 1;
    spec.root = branch;
    spec.fitted = a1;
    spec.tau0 = tau0;

    auto eval = [pole_coeff, tau0](double tau) { return pole_coeff / (tau - tau0); };
    return ClosedFormSolution(spec, emden_pair_case1(beta, a1), eval, {tau0},
                              {{-kInf, tau0}, {tau0, kInf}},
                              {{"a1", a1}, {"pole_coeff", pole_coeff}});
}

ClosedFormSolution emden_solution_case2(double beta, double a1, double tau0) {
    require(beta > 0.0, "emden requires beta > 0");
    require(a1 != 0.0, "a1 must be nonzero");
    const double sqb = std::sqrt(beta);
    const double rate = -2.0 * a1 * sqb;  // radicand is rate * (tau - tau0)

    SolutionSpec spec;
    spec.family = "emden";
    spec.case_tag = 2;
    spec.fitted = a1;
    spec.tau0 = tau0;

    auto eval = [rate, tau0](double tau) {
        return 1.0 / std::sqrt(rate * (tau - tau0));
    };
    const std::vector<Interval> domain =
        rate > 0.0 ? std::vector<Interval>{{tau0, kInf}} : std::vector<Interval>{{-kInf, tau0}};

    // The induced quadratic damping makes this the G E = 3 beta, A = 0 member
    // of the Duffing-van der Pol family.
    const double G = -sqb / a1;
    const double E = -3.0 * a1 * sqb;
    return ClosedFormSolution(
        spec, emden_pair_case2(beta, a1), eval, {tau0}, domain,
        {{"a1", a1}, {"G", G}, {"E", E}, {"A", 0.0}, {"GE", G * E}},
        {"member of the dvp family with G*E = 3*beta and A = 0"});
}

}  // namespace liefact
