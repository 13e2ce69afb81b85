#include <cmath>

#include "family_util.hpp"
#include "liefact/families.hpp"
#include "liefact/numerics.hpp"

namespace liefact {

using detail::kInf;
using detail::negative_base_ok;
using detail::require;

namespace {

void require_bh(double beta, double delta) {
    require(beta > 0.0, "burgers-huxley requires beta > 0");
    require(delta > 0.0, "burgers-huxley requires delta > 0");
}

void check_back_substitution(double alpha, double back) {
    if (std::abs(back - alpha) > 1e-12 * std::max(1.0, std::abs(alpha))) {
        throw std::logic_error("burgers-huxley fit: back-substitution failed to reproduce alpha");
    }
}

}  // namespace

double BhFitCase1::nu(double a1, double gamma) const {
    return -std::sqrt(beta) * (a1 - gamma / a1);
}

double BhFitCase2::nu(double e1, double gamma) const {
    return std::sqrt(beta) * (e1 * gamma - 1.0 / e1);
}

BhFitCase1 bh_fit_case1(double alpha, double beta, double delta) {
    require_bh(beta, delta);
    const double sqb = std::sqrt(beta);
    // alpha = -sqrt(b)(a1(1+d) - 1/a1)  <=>  sqrt(b)(1+d) a1^2 + alpha a1 - sqrt(b) = 0
    const double disc = alpha * alpha + 4.0 * beta * (1.0 + delta);
    if (!(disc > 0.0)) throw std::logic_error("bh_fit_case1: discriminant not positive");
    const QuadraticRoots roots = solve_quadratic(sqb * (1.0 + delta), alpha, -sqb);

    BhFitCase1 fit;
    fit.a1_plus = roots.plus;
    fit.a1_minus = roots.minus;
    fit.beta = beta;
    for (const double a1 : {fit.a1_plus, fit.a1_minus}) {
        check_back_substitution(alpha, -sqb * (a1 * (1.0 + delta) - 1.0 / a1));
    }
    return fit;
}

BhFitCase2 bh_fit_case2(double alpha, double beta, double delta) {
    require_bh(beta, delta);
    const double sqb = std::sqrt(beta);
    // alpha = sqrt(b)(e1(1+d) - 1/e1)  <=>  sqrt(b)(1+d) e1^2 - alpha e1 - sqrt(b) = 0;
    // at delta = 1 the roots are (alpha +/- sqrt(alpha^2 + 8 beta)) / (4 sqrt(beta)).
    const QuadraticRoots roots = solve_quadratic(sqb * (1.0 + delta), -alpha, -sqb);

    BhFitCase2 fit;
    fit.e1_plus = roots.plus;
    fit.e1_minus = roots.minus;
    fit.beta = beta;
    for (const double e1 : {fit.e1_plus, fit.e1_minus}) {
        check_back_substitution(alpha, sqb * (e1 * (1.0 + delta) - 1.0 / e1));
    }
    return fit;
}

FactorPair bh_pair_case1(double beta, double gamma, double delta, double a1) {
    require_bh(beta, delta);
    require(a1 != 0.0, "a1 must be nonzero");
    const double sqb = std::sqrt(beta);
    GeneralizedPolynomial phi1({{sqb * a1, 0.0}, {-sqb * a1, delta}});
    GeneralizedPolynomial phi2({{-gamma * sqb / a1, 0.0}, {sqb / a1, delta}});
    return FactorPair(std::move(phi1), std::move(phi2));
}

FactorPair bh_pair_case2(double beta, double gamma, double delta, double e1) {
    require_bh(beta, delta);
    require(e1 != 0.0, "e1 must be nonzero");
    const double sqb = std::sqrt(beta);
    GeneralizedPolynomial phi1({{-gamma * sqb * e1, 0.0}, {sqb * e1, delta}});
    GeneralizedPolynomial phi2({{sqb / e1, 0.0}, {-sqb / e1, delta}});
    return FactorPair(std::move(phi1), std::move(phi2));
}

LienardForm bh_form(double alpha, double beta, double gamma, double delta, double nu) {
    require_bh(beta, delta);
    GeneralizedPolynomial g({{nu, 0.0}, {-alpha, delta}});
    // beta u (1 - u^d)(u^d - gamma) expanded
    GeneralizedPolynomial F({{-beta * gamma, 1.0},
                             {beta * (1.0 + gamma), delta + 1.0},
                             {-beta, 2.0 * delta + 1.0}});
    return LienardForm(std::move(g), std::move(F));
}

ClosedFormSolution bh_solution_case1(double alpha, double beta, double gamma,
                                     double delta, RootBranch root, SignBranch sign,
                                     double tau0) {
    const BhFitCase1 fit = bh_fit_case1(alpha, beta, delta);
    const double a1 = fit.a1(root);
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;
    const double rate = a1 * std::sqrt(beta) * delta;  // base = 1 + s exp(-rate (tau-tau0))
    const double inv_delta = 1.0 / delta;

    SolutionSpec spec;
    spec.family = "burgers-huxley";
    spec.case_tag = 1;
    spec.root = root;
    spec.sign = sign;
    spec.fitted = a1;
    spec.tau0 = tau0;

    auto eval = [rate, s, inv_delta, tau0](double tau) {
        const double x = std::exp(-rate * (tau - tau0));
        return real_pow(1.0 + s * x, -inv_delta);
    };

    std::vector<double> singularities;
    std::vector<Interval> domain;
    if (sign == SignBranch::plus) {
        domain = {{-kInf, kInf}};  // kink between 0 and 1
    } else {
        singularities.push_back(tau0);
        const Interval positive_base = rate > 0.0 ? Interval{tau0, kInf} : Interval{-kInf, tau0};
        const Interval negative_base = rate > 0.0 ? Interval{-kInf, tau0} : Interval{tau0, kInf};
        domain.push_back(positive_base);
        if (negative_base_ok(delta)) domain.push_back(negative_base);
    }

    return ClosedFormSolution(spec, bh_pair_case1(beta, gamma, delta, a1), eval,
                              std::move(singularities), std::move(domain),
                              {{"a1", a1}, {"nu", fit.nu(a1, gamma)}});
}

ClosedFormSolution bh_solution_case2(double alpha, double beta, double gamma,
                                     double delta, RootBranch root, SignBranch sign,
                                     double tau0) {
    require(gamma != 0.0, "case 2 requires gamma != 0 for a nontrivial solution");
    const BhFitCase2 fit = bh_fit_case2(alpha, beta, delta);
    const double e1 = fit.e1(root);
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;
    const double rate = e1 * std::sqrt(beta) * gamma * delta;
    const double inv_delta = 1.0 / delta;

    SolutionSpec spec;
    spec.family = "burgers-huxley";
    spec.case_tag = 2;
    spec.root = root;
    spec.sign = sign;
    spec.fitted = e1;
    spec.tau0 = tau0;

    auto eval = [rate, s, gamma, inv_delta, tau0](double tau) {
        const double x = std::exp(rate * (tau - tau0));
        return real_pow(gamma / (1.0 + s * x), inv_delta);
    };

    const bool neg_ok = negative_base_ok(delta);
    std::vector<double> singularities;
    std::vector<Interval> domain;
    if (sign == SignBranch::plus) {
        // denom in (0, inf); base has the sign of gamma everywhere
        if (gamma > 0.0 || neg_ok) domain = {{-kInf, kInf}};
    } else {
        singularities.push_back(tau0);
        const Interval denom_pos = rate > 0.0 ? Interval{-kInf, tau0} : Interval{tau0, kInf};
        const Interval denom_neg = rate > 0.0 ? Interval{tau0, kInf} : Interval{-kInf, tau0};
        const Interval base_pos = gamma > 0.0 ? denom_pos : denom_neg;
        const Interval base_neg = gamma > 0.0 ? denom_neg : denom_pos;
        domain.push_back(base_pos);
        if (neg_ok) domain.push_back(base_neg);
    }

    return ClosedFormSolution(spec, bh_pair_case2(beta, gamma, delta, e1), eval,
                              std::move(singularities), std::move(domain),
                              {{"e1", e1}, {"nu", fit.nu(e1, gamma)}},
                              {"e1 from the general-delta quadratic (closed form at delta = 1)"});
}

}  // namespace liefact
