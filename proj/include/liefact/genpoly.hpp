#pragma once

#include <string>
#include <vector>

#include "liefact/errors.hpp"

namespace liefact {

// One monomial c * u^p.
struct Term {
    double coeff = 0.0;
    double exponent = 0.0;
};

// Sparse polynomial in u with real (possibly fractional) exponents.
//
// Canonical form: terms sorted by ascending exponent, exponents closer than
// kExponentMergeTol merged, coefficients at or below the drop tolerance
// removed. Values are immutable after construction and safe to share across
// threads.
class GeneralizedPolynomial {
public:
    static constexpr double kExponentMergeTol = 1e-12;
    static constexpr double kDefaultDropTol = 1e-14;

    // The zero polynomial.
    GeneralizedPolynomial() = default;

    // Canonicalizes the given terms. Throws InvalidParamError on a negative
    // exponent: the damping and force functions handled here never contain
    // negative powers of u. (Derivatives may carry them internally; see
    // derivative().)
    explicit GeneralizedPolynomial(std::vector<Term> terms,
                                   double drop_tol = kDefaultDropTol);

    static GeneralizedPolynomial constant(double c);
    static GeneralizedPolynomial monomial(double coeff, double exponent);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double drop_tol() const { return drop_tol_; }

    // Coefficient of the term whose exponent matches within merge tolerance;
    // 0 if absent.
    double coefficient(double exponent) const;

    // Sum of c_i * u^{p_i}; 0 for the zero polynomial. Requires u >= 0 when
    // a fractional exponent is present and u != 0 when a negative exponent
    // is present; throws DomainError otherwise.
    double evaluate(double u) const;

    // Term-wise d/du: (c, p) -> (c p, p-1), exponent-0 terms vanish. An
    // exponent in (0,1) yields a negative exponent in the result; that is
    // allowed for derivatives, which only ever appear multiplied back by u.
    GeneralizedPolynomial derivative() const;

    // "c1*u^p1 + c2*u^p2" with up to 12 significant digits; zero -> "0".
    std::string to_string() const;

    // Inverse of to_string. Accepts forms like "3", "u", "-u^2", "2*u^0.5",
    // "1e-3*u^2 + 4". Throws InvalidParamError on malformed input or a
    // negative exponent.
    static GeneralizedPolynomial parse(const std::string& text);

    friend GeneralizedPolynomial add(const GeneralizedPolynomial&, const GeneralizedPolynomial&);
    friend GeneralizedPolynomial multiply(const GeneralizedPolynomial&, const GeneralizedPolynomial&);
    friend GeneralizedPolynomial scale(const GeneralizedPolynomial&, double);

private:
    // Canonicalize without the nonnegative-exponent check.
    static GeneralizedPolynomial from_terms_unchecked(std::vector<Term> terms,
                                                      double drop_tol);

    std::vector<Term> terms_;
    double drop_tol_ = kDefaultDropTol;
};

GeneralizedPolynomial add(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q);
GeneralizedPolynomial multiply(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q);
GeneralizedPolynomial scale(const GeneralizedPolynomial& p, double c);
GeneralizedPolynomial derivative(const GeneralizedPolynomial& p);

// True iff p and q agree coefficient-wise at tolerance tol, once terms whose
// coefficient magnitude is at most tol are treated as absent.
bool approx_equal(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q,
                  double tol);

inline GeneralizedPolynomial operator+(const GeneralizedPolynomial& p,
                                       const GeneralizedPolynomial& q) {
    return add(p, q);
}
inline GeneralizedPolynomial operator*(const GeneralizedPolynomial& p,
                                       const GeneralizedPolynomial& q) {
    return multiply(p, q);
}
inline GeneralizedPolynomial operator*(double c, const GeneralizedPolynomial& p) {
    return scale(p, c);
}

// x^p over the reals. An exponent within 1e-9 of an integer is treated as
// that integer (negative x allowed); a fractional exponent requires x >= 0;
// a negative exponent requires x != 0. Throws DomainError.
double real_pow(double x, double p);

}  // namespace liefact
