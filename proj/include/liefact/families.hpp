#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liefact/factorization.hpp"

namespace liefact {

// Which root of the fitting-parameter quadratic.
enum class RootBranch { plus, minus };
// The +/- sign inside a closed-form expression.
enum class SignBranch { plus, minus };

const char* to_string(RootBranch b);
const char* to_string(SignBranch b);

// Open interval of tau; lo/hi may be -/+infinity.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double tau) const { return tau > lo && tau < hi; }
    double width() const { return hi - lo; }
};

std::string format_intervals(const std::vector<Interval>& intervals);

// Identifying tags of one solution instance.
struct SolutionSpec {
    std::string family;
    int case_tag = 1;
    std::optional<RootBranch> root;
    std::optional<SignBranch> sign;
    double fitted = 0.0;  // the a1/e1 value in effect
    double tau0 = 0.0;
};

// A particular solution u(tau) of one family instance. Carries the
// factorization it came from, its singularities and validity intervals, and
// analytic derivatives obtained through the compatible first-order equation
// u' = phi1(u) u (so u'' = d/du[phi1 u] * phi1 u; no finite differences).
//
// Immutable after construction; evaluation is pure and thread-safe.
class ClosedFormSolution {
public:
    ClosedFormSolution(SolutionSpec spec, FactorPair pair,
                       std::function<double(double)> evaluator,
                       std::vector<double> singularities,
                       std::vector<Interval> domain,
                       std::map<std::string, double> derived = {},
                       std::vector<std::string> notes = {});

    const std::string& family() const { return spec_.family; }
    int case_tag() const { return spec_.case_tag; }
    std::optional<RootBranch> root_branch() const { return spec_.root; }
    std::optional<SignBranch> sign_branch() const { return spec_.sign; }
    std::string branch_label() const;
    double fitted() const { return spec_.fitted; }
    double tau0() const { return spec_.tau0; }

    const FactorPair& pair() const { return pair_; }
    // compose(pair()), cached: the equation this solution satisfies.
    const LienardForm& form() const { return form_; }
    const std::vector<double>& singularities() const { return singularities_; }
    const std::vector<Interval>& domain() const { return domain_; }
    // Family-specific derived quantities (induced parameters, wave speed, ...).
    const std::map<std::string, double>& derived() const { return derived_; }
    const std::vector<std::string>& notes() const { return notes_; }

    bool in_domain(double tau) const;

    // Throws DomainError (mentioning the validity domain) outside it.
    double u(double tau) const;
    double udot(double tau) const;
    double uddot(double tau) const;

private:
    SolutionSpec spec_;
    FactorPair pair_;
    LienardForm form_;
    GeneralizedPolynomial rhs_;     // phi1(u) u
    GeneralizedPolynomial rhs_du_;  // d/du of rhs_
    std::function<double(double)> evaluator_;
    std::vector<double> singularities_;
    std::vector<Interval> domain_;
    std::map<std::string, double> derived_;
    std::vector<std::string> notes_;
};

// ---------------------------------------------------------------------------
// Modified Emden equation  u'' + alpha u u' + beta u^3 = 0,  beta > 0
// ---------------------------------------------------------------------------

struct EmdenFit {
    double a1_plus = 0.0;
    double a1_minus = 0.0;
    bool double_root = false;  // alpha^2 == 8 beta: branches coincide
};

// Roots of the damping identification alpha = -sqrt(beta)(2 a1^2 + 1)/a1,
//   a1 = (-alpha +/- sqrt(alpha^2 - 8 beta)) / (4 sqrt(beta)).
// Throws ComplexRootsError when alpha^2 < 8 beta. For alpha > 0 both roots
// are negative.
EmdenFit emden_fit(double alpha, double beta);

FactorPair emden_pair_case1(double beta, double a1);  // (a1 sqrt(b) u, sqrt(b)/a1 u)
FactorPair emden_pair_case2(double beta, double a1);  // (a1 sqrt(b) u^2, sqrt(b)/a1)

// The target form (alpha u, beta u^3), transcribed independently of compose.
LienardForm emden_form(double alpha, double beta);

// u(tau) = -1 / (a1 sqrt(beta) (tau - tau0)), simple pole at tau0.
ClosedFormSolution emden_solution_case1(double alpha, double beta, RootBranch branch,
                                        double tau0);

// u(tau) = [-2 a1 sqrt(beta) (tau - tau0)]^(-1/2) on the half-line where the
// radicand is positive. Also the G E = 3 beta, A = 0 member of the
// Duffing-van der Pol family; the induced G, E are reported in derived().
ClosedFormSolution emden_solution_case2(double beta, double a1, double tau0);

// ---------------------------------------------------------------------------
// Generalized Lienard equation  u'' + g(u) u' + A u + B u^2 + C u^3 = 0
// with Delta^2 = B^2 - 4AC > 0. Here a1 is a free parameter and g is induced
// by the chosen factorization.
// ---------------------------------------------------------------------------

GeneralizedPolynomial lienard_f3(double A, double B, double C);
double lienard_delta(double A, double B, double C);  // DiscriminantError if <= 0

FactorPair lienard_pair_case1(double A, double B, double C, double a1);
FactorPair lienard_pair_case2(double A, double B, double C, double a1);

// Hand-transcribed induced damping for each case (checked against compose):
//   case 1: g = -[(B+D)/2 a1 + (B-D)/(2C) a1^-1 + (2C a1 + a1^-1) u]
//   case 2: g = -[(a1 A + a1^-1) + 2 a1 B u + 3 a1 C u^2]
LienardForm lienard_form_case1(double A, double B, double C, double a1);
LienardForm lienard_form_case2(double A, double B, double C, double a1);

// u(tau) = (B+D)/2 * (s exp[-a1 (B+D)/2 (tau-tau0)] - C)^-1 where s is the
// sign branch (plus is the printed form; minus takes the other sign of the
// integration constant). Pole where the denominator vanishes (s C > 0).
ClosedFormSolution lienard_solution_case1(double A, double B, double C, double a1,
                                          double tau0, SignBranch sign);

// Transcendental relation for case 2 (u' = a1 F3(u)):
//   a1 (tau - tau0) = (1/2A) ln(u^3/F3(u)) - (B/(2A Delta)) ln((2Cu+B-D)/(2Cu+B+D)).
// tau_of(u) evaluates the right-hand side divided by a1; the bracket is a
// finite closed interval inside the maximal region around `seed` where both
// logarithms stay real, on which tau_of is strictly monotone.
class ImplicitRelation {
public:
    ImplicitRelation(double A, double B, double C, double a1, double tau0,
                     double bracket_lo, double bracket_hi);

    double A() const { return a_; }
    double B() const { return b_; }
    double C() const { return c_; }
    double delta() const { return delta_; }
    double a1() const { return a1_; }
    double tau0() const { return tau0_; }
    double bracket_lo() const { return lo_; }
    double bracket_hi() const { return hi_; }
    const GeneralizedPolynomial& F3() const { return f3_; }

    double tau_of(double u) const;   // tau - tau0 at this u
    double dtau_du(double u) const;  // 1 / (a1 F3(u))

private:
    double a_, b_, c_, delta_, a1_, tau0_, lo_, hi_;
    GeneralizedPolynomial f3_;
};

ImplicitRelation lienard_implicit_case2(double A, double B, double C, double a1,
                                        double tau0, double seed = 1.0);

// ---------------------------------------------------------------------------
// Duffing-van der Pol oscillator  u'' + (G + E u^2) u' + A u + u^3 = 0, E != 0
// (the B = 0, C = 1 Lienard reduction)
// ---------------------------------------------------------------------------

struct DvpFit {
    double a1 = 0.0;  // -E/3
    double G = 0.0;   // (A E^2 + 9) / (3E)
    // |A - 3/E^2| <= 1e-9: the reduced one-parameter correspondence
    // E = beta, A = 3/beta^2.
    bool special_A_3_over_E2 = false;
};

DvpFit dvp_fit(double E, double A);

FactorPair dvp_pair(double A, double a1);  // (a1 (A + u^2), a1^-1)
LienardForm dvp_form(double G, double E, double A);

// u(tau) = s * (A X / (1 - X))^(1/2), X = exp[-(2/3) A E (tau - tau0)];
// singular at tau0, real on the side of tau0 where the radicand is positive.
// Rejects A = 0 (that member is emden_solution_case2).
ClosedFormSolution dvp_solution(double E, double A, SignBranch sign, double tau0);

// ---------------------------------------------------------------------------
// Convective Fisher equation  u'' + 2(nu - mu u) u' + 2u(1-u) = 0,  mu > 0
// (traveling-wave form; nu is derived, not free)
// ---------------------------------------------------------------------------

struct FisherFit {
    double a1 = 0.0;
    double nu = 0.0;
    bool nu_derived = false;  // case 2: nu obtained by composing the pair
};

FisherFit fisher_fit_case1(double mu);  // a1 = -mu/sqrt(2), nu = mu/2 + 1/mu
FisherFit fisher_fit_case2(double mu);  // a1 = -sqrt(2) mu, nu from compose

FactorPair fisher_pair_case1(double a1);  // (sqrt2 a1 (1-u), sqrt2 / a1)
FactorPair fisher_pair_case2(double a1);  // the swap of case 1
LienardForm fisher_form(double mu, double nu);

// u(tau) = (1 + s exp[mu (tau - tau0)])^-1; s=+1 is a kink on all of R with
// u(tau0) = 1/2, s=-1 has a pole at tau0.
ClosedFormSolution fisher_solution_case1(double mu, SignBranch sign, double tau0);

// u(tau) = s exp[-(tau - tau0)/mu] on all of R.
ClosedFormSolution fisher_solution_case2(double mu, SignBranch sign, double tau0);

// ---------------------------------------------------------------------------
// Generalized Burgers-Huxley equation (traveling-wave form)
//   u'' + (nu - alpha u^d) u' + beta u (1 - u^d)(u^d - gamma) = 0,
// beta > 0, delta > 0; nu is derived.
// ---------------------------------------------------------------------------

struct BhFitCase1 {
    double a1_plus = 0.0;
    double a1_minus = 0.0;
    double beta = 0.0;
    // nu identification: nu = -sqrt(beta) (a1 - gamma / a1).
    double nu(double a1, double gamma) const;
    double a1(RootBranch b) const { return b == RootBranch::plus ? a1_plus : a1_minus; }
};

// Roots of alpha = -sqrt(beta)(a1 (1+delta) - 1/a1):
//   a1 = (-alpha +/- sqrt(alpha^2 + 4 beta (1+delta))) / (2 sqrt(beta)(1+delta)).
// The discriminant is positive for all admissible (alpha, beta, delta).
BhFitCase1 bh_fit_case1(double alpha, double beta, double delta);

struct BhFitCase2 {
    double e1_plus = 0.0;
    double e1_minus = 0.0;
    double beta = 0.0;
    // nu identification: nu = sqrt(beta) (e1 gamma - 1/e1).
    double nu(double e1, double gamma) const;
    double e1(RootBranch b) const { return b == RootBranch::plus ? e1_plus : e1_minus; }
};

// Roots of the general-delta quadratic sqrt(beta)(1+delta) e1^2 - alpha e1
// - sqrt(beta) = 0, from alpha = sqrt(beta)(e1 (1+delta) - 1/e1); at delta=1
// this reduces to e1 = (alpha +/- sqrt(alpha^2 + 8 beta)) / (4 sqrt(beta)).
BhFitCase2 bh_fit_case2(double alpha, double beta, double delta);

FactorPair bh_pair_case1(double beta, double gamma, double delta, double a1);
FactorPair bh_pair_case2(double beta, double gamma, double delta, double e1);
LienardForm bh_form(double alpha, double beta, double gamma, double delta, double nu);

// u(tau) = (1 + s exp[-a1 sqrt(beta) delta (tau - tau0)])^(-1/delta).
// s=+1 is a kink between 0 and 1; s=-1 is singular at tau0 with
// fractional-power domain restrictions for non-integer delta.
ClosedFormSolution bh_solution_case1(double alpha, double beta, double gamma,
                                     double delta, RootBranch root, SignBranch sign,
                                     double tau0);

// u(tau) = (gamma / (1 + s exp[e1 sqrt(beta) gamma delta (tau - tau0)]))^(1/delta),
// gamma != 0; asymptotes 0 and gamma^(1/delta).
ClosedFormSolution bh_solution_case2(double alpha, double beta, double gamma,
                                     double delta, RootBranch root, SignBranch sign,
                                     double tau0);

// ---------------------------------------------------------------------------

struct FamilyInfo {
    std::string name;
    std::string parameters;
    std::string constraints;
    int cases = 0;
};

// The five implemented families, for CLI listing.
const std::vector<FamilyInfo>& family_catalog();

}  // namespace liefact
