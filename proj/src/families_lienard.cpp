#include <algorithm>
#include <cmath>

#include "family_util.hpp"
#include "liefact/families.hpp"

namespace liefact {

using detail::kInf;
using detail::require;

GeneralizedPolynomial lienard_f3(double A, double B, double C) {
    return GeneralizedPolynomial({{A, 1.0}, {B, 2.0}, {C, 3.0}});
}

double lienard_delta(double A, double B, double C) {
    const double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) {
        throw DiscriminantError("B^2 - 4AC must be positive (got " + std::to_string(disc) +
                                ")");
    }
    return std::sqrt(disc);
}

FactorPair lienard_pair_case1(double A, double B, double C, double a1) {
    const double d = lienard_delta(A, B, C);
    require(C != 0.0, "case 1 requires C != 0");
    require(a1 != 0.0, "a1 must be nonzero");
    GeneralizedPolynomial phi1({{a1 * (B + d) / 2.0, 0.0}, {a1 * C, 1.0}});
    GeneralizedPolynomial phi2({{(B - d) / (2.0 * C) / a1, 0.0}, {1.0 / a1, 1.0}});
    return FactorPair(std::move(phi1), std::move(phi2));
}

FactorPair lienard_pair_case2(double A, double B, double C, double a1) {
    lienard_delta(A, B, C);
    require(a1 != 0.0, "a1 must be nonzero");
    GeneralizedPolynomial phi1({{a1 * A, 0.0}, {a1 * B, 1.0}, {a1 * C, 2.0}});
    return FactorPair(std::move(phi1), GeneralizedPolynomial::constant(1.0 / a1));
}

LienardForm lienard_form_case1(double A, double B, double C, double a1) {
    const double d = lienard_delta(A, B, C);
    require(C != 0.0, "case 1 requires C != 0");
    require(a1 != 0.0, "a1 must be nonzero");
    GeneralizedPolynomial g({{-((B + d) / 2.0 * a1 + (B - d) / (2.0 * C) / a1), 0.0},
                             {-(2.0 * C * a1 + 1.0 / a1), 1.0}});
    return LienardForm(std::move(g), lienard_f3(A, B, C));
}

LienardForm lienard_form_case2(double A, double B, double C, double a1) {
    lienard_delta(A, B, C);
    require(a1 != 0.0, "a1 must be nonzero");
    GeneralizedPolynomial g({{-(a1 * A + 1.0 / a1), 0.0},
                             {-2.0 * a1 * B, 1.0},
                             {-3.0 * a1 * C, 2.0}});
    return LienardForm(std::move(g), lienard_f3(A, B, C));
}

ClosedFormSolution lienard_solution_case1(double A, double B, double C, double a1,
                                          double tau0, SignBranch sign) {
    const double d = lienard_delta(A, B, C);
    require(C != 0.0, "case 1 requires C != 0");
    require(a1 != 0.0, "a1 must be nonzero");
    const double lead = (B + d) / 2.0;
    require(lead != 0.0, "leading factor (B + Delta)/2 vanishes; the case-1 solution degenerates");
    const double s = sign == SignBranch::plus ? 1.0 : -1.0;
    const double rate = -a1 * lead;  // exponent coefficient inside the denominator

    SolutionSpec spec;
    spec.family = "lienard";
    spec.case_tag = 1;
    spec.sign = sign;
    spec.fitted = a1;
    spec.tau0 = tau0;

    auto eval = [lead, s, rate, C, tau0](double tau) {
        return lead / (s * std::exp(rate * (tau - tau0)) - C);
    };

    std::vector<double> singularities;
    std::vector<Interval> domain;
    if (s * C > 0.0) {
        const double pole = tau0 + std::log(s * C) / rate;
        singularities.push_back(pole);
        domain = {{-kInf, pole}, {pole, kInf}};
    } else {
        domain = {{-kInf, kInf}};
    }

    const LienardForm induced = lienard_form_case1(A, B, C, a1);
    std::map<std::string, double> derived = {{"a1", a1},
                                             {"delta", d},
                                             {"lead", lead},
                                             {"g_const", induced.g.coefficient(0.0)},
                                             {"g_u", induced.g.coefficient(1.0)}};
    if (!singularities.empty()) derived["pole_tau"] = singularities.front();
    return ClosedFormSolution(spec, lienard_pair_case1(A, B, C, a1), eval,
                              std::move(singularities), std::move(domain), std::move(derived),
                              {"g is induced by the factorization; a1 is a free parameter"});
}

ImplicitRelation::ImplicitRelation(double A, double B, double C, double a1, double tau0,
                                   double bracket_lo, double bracket_hi)
    : a_(A),
      b_(B),
      c_(C),
      delta_(lienard_delta(A, B, C)),
      a1_(a1),
      tau0_(tau0),
      lo_(bracket_lo),
      hi_(bracket_hi),
      f3_(lienard_f3(A, B, C)) {
    require(A != 0.0, "case 2 relation requires A != 0 (exponent 1/(2A))");
    require(C != 0.0, "case 2 relation requires C != 0");
    require(a1 != 0.0, "a1 must be nonzero");
    require(bracket_lo < bracket_hi && std::isfinite(bracket_lo) && std::isfinite(bracket_hi),
            "bracket must be a finite nonempty interval");
    // Both logarithms must stay real and tau_of strictly monotone across the
    // bracket; probe a modest sample.
    double prev = 0.0;
    int dir = 0;
    for (int i = 0; i <= 32; ++i) {
        const double u = lo_ + (hi_ - lo_) * i / 32.0;
        const double t = tau_of(u);  // throws DomainError if a log argument is bad
        if (i > 0) {
            const int step = t > prev ? 1 : (t < prev ? -1 : 0);
            if (step == 0 || (dir != 0 && step != dir)) {
                throw NonMonotonicError("tau(u) is not strictly monotone on the bracket");
            }
            dir = step;
        }
        prev = t;
    }
}

double ImplicitRelation::tau_of(double u) const {
    const double quad = a_ + b_ * u + c_ * u * u;  // F3(u)/u
    const double num = 2.0 * c_ * u + b_ - delta_;
    const double den = 2.0 * c_ * u + b_ + delta_;
    if (u == 0.0 || quad <= 0.0) {
        throw DomainError("log argument u^3/F3(u) is not positive at u = " +
                          std::to_string(u));
    }
    if (den == 0.0 || num / den <= 0.0) {
        throw DomainError("log argument (2Cu+B-Delta)/(2Cu+B+Delta) is not positive at u = " +
                          std::to_string(u));
    }
    const double log_cubic = std::log(u * u / quad);  // u^3/F3 reduced to u^2/(A+Bu+Cu^2)
    const double log_ratio = std::log(num / den);
    return (log_cubic / (2.0 * a_) - b_ / (2.0 * a_ * delta_) * log_ratio) / a1_;
}

double ImplicitRelation::dtau_du(double u) const { return 1.0 / (a1_ * f3_.evaluate(u)); }

ImplicitRelation lienard_implicit_case2(double A, double B, double C, double a1,
                                        double tau0, double seed) {
    const double d = lienard_delta(A, B, C);
    require(A != 0.0, "case 2 relation requires A != 0 (exponent 1/(2A))");
    require(C != 0.0, "case 2 relation requires C != 0");
    require(a1 != 0.0, "a1 must be nonzero");

    // tau(u) is real between consecutive points of {0, roots of A+Bu+Cu^2}.
    const double r1 = (-B + d) / (2.0 * C);
    const double r2 = (-B - d) / (2.0 * C);
    const double scale = 1.0 + std::abs(seed) + std::max(std::abs(r1), std::abs(r2));
    for (const double p : {0.0, r1, r2}) {
        require(std::abs(seed - p) > 1e-9 * scale,
                "seed coincides with a singular point of the relation");
    }
    double lo = -kInf;
    double hi = kInf;
    for (const double p : {0.0, r1, r2}) {
        if (p < seed) lo = std::max(lo, p);
        if (p > seed) hi = std::min(hi, p);
    }
    {
        // The printed relation needs both log arguments positive; check at the seed
        // (their signs are constant between singular points).
        const double quad = A + B * seed + C * seed * seed;
        const double ratio = (2.0 * C * seed + B - d) / (2.0 * C * seed + B + d);
        require(quad > 0.0 && ratio > 0.0,
                "no real relation around the seed: a logarithm argument is negative there");
    }
    // Finite working bracket: stand off the singular endpoints, cap unbounded
    // ones where the relation is still well conditioned for inversion.
    const double lo_f = std::isinf(lo) ? seed - 16.0 * scale : lo + std::max(1e-9, 1e-9 * std::abs(lo));
    const double hi_f = std::isinf(hi) ? seed + 16.0 * scale : hi - std::max(1e-9, 1e-9 * std::abs(hi));
    require(lo_f < hi_f, "bracket around the seed is degenerate");
    return ImplicitRelation(A, B, C, a1, tau0, lo_f, hi_f);
}

}  // namespace liefact
