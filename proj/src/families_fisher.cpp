#include <cmath>

#include "family_util.hpp"
#include "liefact/families.hpp"

namespace liefact {

using detail::kInf;
using detail::require;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

FisherFit fisher_fit_case1(double mu) {
    require(mu > 0.0, "fisher requires mu > 0");
    FisherFit fit;
    fit.a1 = -mu / kSqrt2;
    fit.nu = mu / 2.0 + 1.0 / mu;
    return fit;
}

FisherFit fisher_fit_case2(double mu) {
    require(mu > 0.0, "fisher requires mu > 0");
    FisherFit fit;
    fit.a1 = -kSqrt2 * mu;
    // nu is not given in closed form for the exchanged pair; read it off the
    // composed damping g = 2(nu - mu u).
    fit.nu = compose(fisher_pair_case2(fit.a1)).g.coefficient(0.0) / 2.0;
    fit.nu_derived = true;
    return fit;
}

FactorPair fisher_pair_case1(double a1) {
    require(a1 != 0.0, "a1 must be nonzero");
    return FactorPair(GeneralizedPolynomial({{kSqrt2 * a1, 0.0}, {-kSqrt2 * a1, 1.0}}),
                      GeneralizedPolynomial::constant(kSqrt2 / a1));
}

FactorPair fisher_pair_case2(double a1) { return swap(fisher_pair_case1(a1)); }

LienardForm fisher_form(double mu, double nu) {
    require(mu > 0.0, "fisher requires mu > 0");
    return LienardForm(GeneralizedPolynomial({{2.0 * nu, 0.0}, {-2.0 * mu, 1.0}}),
                       GeneralizedPolynomial({{2.0, 1.0}, {-2.0, 2.0}}));
}

ClosedFormSolution fisher_solution_case1(double mu, SignBranch sign, double tau0) {
    const FisherFit fit = fisher_fit_case1(mu);
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;

    SolutionSpec spec;
    spec.family = "fisher";
    spec.case_tag = 1;
    spec.sign = sign;
    spec.fitted = fit.a1;
    spec.tau0 = tau0;

    auto eval = [mu, s, tau0](double tau) {
        return 1.0 / (1.0 + s * std::exp(mu * (tau - tau0)));
    };

    std::vector<double> singularities;
    std::vector<Interval> domain;
    if (sign == SignBranch::plus) {
        domain = {{-kInf, kInf}};  // kink: u(-inf)=1, u(tau0)=1/2, u(+inf)=0
    } else {
        singularities.push_back(tau0);
        domain = {{-kInf, tau0}, {tau0, kInf}};
    }
    return ClosedFormSolution(spec, fisher_pair_case1(fit.a1), eval,
                              std::move(singularities), std::move(domain),
                              {{"a1", fit.a1}, {"nu", fit.nu}});
}

ClosedFormSolution fisher_solution_case2(double mu, SignBranch sign, double tau0) {
    const FisherFit fit = fisher_fit_case2(mu);
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;

    SolutionSpec spec;
    spec.family = "fisher";
    spec.case_tag = 2;
    spec.sign = sign;
    spec.fitted = fit.a1;
    spec.tau0 = tau0;

    auto eval = [mu, s, tau0](double tau) { return s * std::exp(-(tau - tau0) / mu); };
    return ClosedFormSolution(spec, fisher_pair_case2(fit.a1), eval, {}, {{-kInf, kInf}},
                              {{"a1", fit.a1}, {"nu", fit.nu}},
                              {"nu derived by composing the exchanged factor pair"});
}

}  // namespace liefact
