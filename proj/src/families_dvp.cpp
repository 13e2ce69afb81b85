#include <cmath>

#include "family_util.hpp"
#include "liefact/families.hpp"

namespace liefact {

using detail::kInf;
using detail::require;

DvpFit dvp_fit(double E, double A) {
    require(E != 0.0, "dvp requires E != 0");
    DvpFit fit;
    fit.a1 = -E / 3.0;
    fit.G = (A * E * E + 9.0) / (3.0 * E);
    fit.special_A_3_over_E2 = std::abs(A - 3.0 / (E * E)) <= 1e-9;

    // Sanity: composing the pair must reproduce g = G + E u^2.
    const LienardForm composed = compose(dvp_pair(A, fit.a1));
    const double tol = 1e-12 * (1.0 + std::max(std::abs(fit.G), std::abs(E)));
    if (!approx_equal(composed.g,
                      GeneralizedPolynomial({{fit.G, 0.0}, {E, 2.0}}), tol)) {
        throw std::logic_error("dvp_fit: composed damping does not match G + E u^2");
    }
    return fit;
}

FactorPair dvp_pair(double A, double a1) {
    require(a1 != 0.0, "a1 must be nonzero");
    return FactorPair(GeneralizedPolynomial({{a1 * A, 0.0}, {a1, 2.0}}),
                      GeneralizedPolynomial::constant(1.0 / a1));
}

LienardForm dvp_form(double G, double E, double A) {
    return LienardForm(GeneralizedPolynomial({{G, 0.0}, {E, 2.0}}),
                       GeneralizedPolynomial({{A, 1.0}, {1.0, 3.0}}));
}

ClosedFormSolution dvp_solution(double E, double A, SignBranch sign, double tau0) {
    require(E != 0.0, "dvp requires E != 0");
    require(A != 0.0,
            "A = 0 degenerates here; it is the G E = 3 beta member covered by emden case 2");
    const DvpFit fit = dvp_fit(E, A);
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;
    const double q = 2.0 * fit.a1 * A;  // = -(2/3) A E, the exponent rate

    SolutionSpec spec;
    spec.family = "dvp";
    spec.case_tag = 1;
    spec.sign = sign;
    spec.fitted = fit.a1;
    spec.tau0 = tau0;

    auto eval = [A, q, s, tau0](double tau) {
        const double x = std::exp(q * (tau - tau0));
        const double radicand = std::isinf(x) ? -A : A * x / (1.0 - x);
        return s * std::sqrt(radicand);
    };

    // Radicand positive: 0 < X < 1 for A > 0, X > 1 for A < 0.
    const bool forward = (A > 0.0) ? (q < 0.0) : (q > 0.0);
    const std::vector<Interval> domain =
        forward ? std::vector<Interval>{{tau0, kInf}} : std::vector<Interval>{{-kInf, tau0}};

    return ClosedFormSolution(spec, dvp_pair(A, fit.a1), eval, {tau0}, domain,
                              {{"a1", fit.a1},
                               {"G", fit.G},
                               {"E", E},
                               {"A", A},
                               {"A_equals_3_over_E2", fit.special_A_3_over_E2 ? 1.0 : 0.0}});
}

}  // namespace liefact
