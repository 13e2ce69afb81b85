#pragma once

#include <vector>

#include "liefact/families.hpp"

namespace liefact {

// Samples of an integrated second-order equation, v = du/dtau.
struct Trajectory {
    std::vector<double> tau;
    std::vector<double> u;
    std::vector<double> v;
    double h = 0.0;  // the uniform step actually used
};

// Classical fixed-step 4th-order Runge-Kutta on (u' = v, v' = -g(u) v - F(u)).
// The span is divided into round(span/h) uniform steps so the endpoint is hit
// exactly (the stored h is the adjusted step). Global error is O(h^4).
// Throws BlowUpError once |u| or |v| exceeds 1e12 (escape near a pole) and
// DomainError on a fractional-power violation.
Trajectory integrate_rk4(const GeneralizedPolynomial& g, const GeneralizedPolynomial& F,
                         double u0, double v0, double tau_begin, double tau_end, double h);

// Evenly spaced closed grid [lo, hi] with `count` points.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

// The validity interval scans sample from: fully unbounded if present, else
// unbounded forward in tau, else unbounded backward, else the widest finite
// one. Throws DomainError on an empty domain.
Interval preferred_interval(const ClosedFormSolution& sol);

// A grid over the preferred validity interval of sol: unbounded intervals are
// clipped to 2*halfwidth (anchored at tau0 or at the finite end plus the
// standoff); finite ends stand off singular points by `standoff`.
GridSpec grid_for_solution(const ClosedFormSolution& sol, int count,
                           double halfwidth = 10.0, double standoff = 1e-3);

// Window of span <= 5 for trajectory cross-checks, `margin` inside the
// preferred interval. A fully unbounded window starts at tau0, where the
// solutions stay O(1); deep in a tail the damping can turn strongly negative
// and amplify integration error.
Interval trajectory_window(const ClosedFormSolution& sol, double margin = 1.5);

// Max |u_rk4 - u(tau)| between the closed form and an RK4 trajectory of
// u'' + g u' + F = 0 seeded exactly from it over trajectory_window(sol).
// A branch that is anti-damped along the whole window (it rides the unstable
// direction of an equilibrium, so forward shooting amplifies step error
// exponentially) is integrated in reversed time instead: w(s) = u(hi - s)
// solves w'' - g(w) w' + F(w) = 0 and follows the same curve stably.
double trajectory_deviation(const ClosedFormSolution& sol, const GeneralizedPolynomial& g,
                            const GeneralizedPolynomial& F, double h = 1e-3);

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;  // |u'' + g(u) u' + F(u)| / (1 + |F(u)|)
    double max_abs_relative = 0.0;
    double tolerance_used = 0.0;
    bool pass = false;  // max_abs_relative <= tolerance_used
};

// Evaluates the equation residual along sol using its analytic derivatives.
// Every grid point must lie inside the validity domain and at least
// `standoff` away from each singularity (DomainError otherwise). Residuals
// are normalized by 1 + |F(u)| so kink tails and pole neighborhoods share one
// tolerance.
ResidualReport residual_scan(const GeneralizedPolynomial& g, const GeneralizedPolynomial& F,
                             const ClosedFormSolution& sol, const GridSpec& grid,
                             double tolerance = 1e-9, double standoff = 1e-3);

struct QuadraticRoots {
    int count = 0;       // 0 (no real roots), 1 (double root), or 2
    double plus = 0.0;   // (-b + sqrt(disc)) / (2a)
    double minus = 0.0;  // (-b - sqrt(disc)) / (2a)
};

// Numerically stable real roots of a x^2 + b x + c = 0: the larger-magnitude
// root is computed as -(b + sign(b) sqrt(disc)) / (2a), the other as
// c / (a r). Throws InvalidParamError when a = 0.
QuadraticRoots solve_quadratic(double a, double b, double c);

// Solves tau0 + tau_of(u) = tau on the relation's bracket by bisection
// refined with Newton steps (dtau/du = 1/(a1 F3)); the residual in tau is at
// most 1e-10. Monotonicity of tau_of on the bracket makes the result unique.
// Throws OutOfRangeError when tau lies outside the image of the bracket and
// NonMonotonicError when the pre-scan fails.
double invert_implicit(const ImplicitRelation& rel, double tau);

// u(tau) defined by inverting rel, packaged with the case-2 factor pair so
// residual and trajectory checks treat it like any closed form. Its validity
// domain is the image of the bracket under tau0 + tau_of.
ClosedFormSolution implicit_solution(const ImplicitRelation& rel);

}  // namespace liefact
