#pragma once

#include "liefact/genpoly.hpp"

namespace liefact {

// Ordered pair of factoring functions for [D - phi2(u)][D - phi1(u)]u = 0.
// Order matters: only the inner factor phi1 defines the compatible
// first-order equation du/dtau = phi1(u) u.
struct FactorPair {
    GeneralizedPolynomial phi1;
    GeneralizedPolynomial phi2;

    // Both factors must be nonzero.
    FactorPair(GeneralizedPolynomial phi1_in, GeneralizedPolynomial phi2_in);
};

// Damping/force pair of a second-order equation u'' + g(u) u' + F(u) = 0.
// F always carries a factor u (so F(0) = 0); the constructor rejects a
// nonzero constant term.
struct LienardForm {
    GeneralizedPolynomial g;
    GeneralizedPolynomial F;

    LienardForm(GeneralizedPolynomial g_in, GeneralizedPolynomial F_in);
};

// Expands the operator product and groups it against u'' + g u' + F = 0:
//   g = -(phi1 + phi2 + phi1' u),  F = phi1 phi2 u.
LienardForm compose(const FactorPair& pair);

// True iff compose(pair) reproduces target's g and F coefficient-wise at
// tolerance tol. Compares canonical coefficients, not sampled values, so
// cancellation errors are not masked.
bool verify_factorization(const LienardForm& target, const FactorPair& pair, double tol);

// phi1(u)*u, the right-hand side of the compatible first-order equation
// extracted from the inner bracket.
GeneralizedPolynomial first_order_rhs(const FactorPair& pair);

// The second factorization of the same force: exchange phi1 and phi2.
FactorPair swap(const FactorPair& pair);

}  // namespace liefact
