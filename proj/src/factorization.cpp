#include "liefact/factorization.hpp"

#include <utility>

namespace liefact {

FactorPair::FactorPair(GeneralizedPolynomial phi1_in, GeneralizedPolynomial phi2_in)
    : phi1(std::move(phi1_in)), phi2(std::move(phi2_in)) {
    if (phi1.is_zero() || phi2.is_zero()) {
        throw InvalidParamError("factor pair requires two nonzero polynomials");
    }
}

LienardForm::LienardForm(GeneralizedPolynomial g_in, GeneralizedPolynomial F_in)
    : g(std::move(g_in)), F(std::move(F_in)) {
    if (F.coefficient(0.0) != 0.0) {
        throw InvalidParamError("force polynomial must vanish at u = 0");
    }
}

LienardForm compose(const FactorPair& pair) {
    const GeneralizedPolynomial u = GeneralizedPolynomial::monomial(1.0, 1.0);
    GeneralizedPolynomial g =
        scale(add(add(pair.phi1, pair.phi2), multiply(pair.phi1.derivative(), u)), -1.0);
    GeneralizedPolynomial F = multiply(multiply(pair.phi1, pair.phi2), u);
    return LienardForm(std::move(g), std::move(F));
}

bool verify_factorization(const LienardForm& target, const FactorPair& pair, double tol) {
    const LienardForm composed = compose(pair);
    return approx_equal(composed.g, target.g, tol) && approx_equal(composed.F, target.F, tol);
}

GeneralizedPolynomial first_order_rhs(const FactorPair& pair) {
    return multiply(pair.phi1, GeneralizedPolynomial::monomial(1.0, 1.0));
}

FactorPair swap(const FactorPair& pair) {
    return FactorPair(pair.phi2, pair.phi1);
}

}  // namespace liefact
