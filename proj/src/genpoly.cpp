#include "liefact/genpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace liefact {

namespace {

std::vector<Term> canonicalize(std::vector<Term> terms, double drop_tol) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const Term& t : terms) {
        if (!out.empty() &&
            t.exponent - out.back().exponent <= GeneralizedPolynomial::kExponentMergeTol) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(t);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [drop_tol](const Term& t) {
                                 return std::abs(t.coeff) <= drop_tol;
                             }),
              out.end());
    return out;
}

}  // namespace

GeneralizedPolynomial::GeneralizedPolynomial(std::vector<Term> terms, double drop_tol)
    : drop_tol_(drop_tol) {
    for (const Term& t : terms) {
        if (t.exponent < -kExponentMergeTol) {
            throw InvalidParamError("negative exponent " + std::to_string(t.exponent) +
                                    " in polynomial term");
        }
    }
    terms_ = canonicalize(std::move(terms), drop_tol_);
}

GeneralizedPolynomial GeneralizedPolynomial::from_terms_unchecked(std::vector<Term> terms,
                                                                  double drop_tol) {
    GeneralizedPolynomial p;
    p.drop_tol_ = drop_tol;
    p.terms_ = canonicalize(std::move(terms), drop_tol);
    return p;
}

GeneralizedPolynomial GeneralizedPolynomial::constant(double c) {
    return GeneralizedPolynomial({{c, 0.0}});
}

GeneralizedPolynomial GeneralizedPolynomial::monomial(double coeff, double exponent) {
    return GeneralizedPolynomial({{coeff, exponent}});
}

double GeneralizedPolynomial::coefficient(double exponent) const {
    for (const Term& t : terms_) {
        if (std::abs(t.exponent - exponent) <= kExponentMergeTol) return t.coeff;
    }
    return 0.0;
}

double real_pow(double x, double p) {
    const double r = std::round(p);
    if (std::abs(p - r) <= 1e-9) {
        if (x == 0.0 && r < 0.0) throw DomainError("0 raised to a negative power");
        return std::pow(x, r);
    }
    if (x < 0.0) {
        throw DomainError("negative base " + std::to_string(x) +
                          " under fractional power " + std::to_string(p));
    }
    if (x == 0.0 && p < 0.0) throw DomainError("0 raised to a negative power");
    return std::pow(x, p);
}

double GeneralizedPolynomial::evaluate(double u) const {
    double sum = 0.0;
    for (const Term& t : terms_) {
        sum += t.coeff * real_pow(u, t.exponent);
    }
    return sum;
}

GeneralizedPolynomial GeneralizedPolynomial::derivative() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) {
        if (std::abs(t.exponent) <= kExponentMergeTol) continue;
        out.push_back({t.coeff * t.exponent, t.exponent - 1.0});
    }
    return from_terms_unchecked(std::move(out), drop_tol_);
}

GeneralizedPolynomial add(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q) {
    std::vector<Term> out = p.terms_;
    out.insert(out.end(), q.terms_.begin(), q.terms_.end());
    return GeneralizedPolynomial::from_terms_unchecked(std::move(out),
                                                       std::max(p.drop_tol_, q.drop_tol_));
}

GeneralizedPolynomial multiply(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q) {
    std::vector<Term> out;
    out.reserve(p.terms_.size() * q.terms_.size());
    for (const Term& a : p.terms_) {
        for (const Term& b : q.terms_) {
            out.push_back({a.coeff * b.coeff, a.exponent + b.exponent});
        }
    }
    return GeneralizedPolynomial::from_terms_unchecked(std::move(out),
                                                       std::max(p.drop_tol_, q.drop_tol_));
}

GeneralizedPolynomial scale(const GeneralizedPolynomial& p, double c) {
    std::vector<Term> out = p.terms_;
    for (Term& t : out) t.coeff *= c;
    return GeneralizedPolynomial::from_terms_unchecked(std::move(out), p.drop_tol_);
}

GeneralizedPolynomial derivative(const GeneralizedPolynomial& p) {
    return p.derivative();
}

bool approx_equal(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q,
                  double tol) {
    const auto& a = p.terms();
    const auto& b = q.terms();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (i < a.size() && j < b.size() &&
            std::abs(a[i].exponent - b[j].exponent) <=
                GeneralizedPolynomial::kExponentMergeTol) {
            if (std::abs(a[i].coeff - b[j].coeff) > tol) return false;
            ++i;
            ++j;
        } else if (j >= b.size() ||
                   (i < a.size() && a[i].exponent < b[j].exponent)) {
            if (std::abs(a[i].coeff) > tol) return false;
            ++i;
        } else {
            if (std::abs(b[j].coeff) > tol) return false;
            ++j;
        }
    }
    return true;
}

namespace {

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_term_body(double coeff, double exponent) {
    if (std::abs(exponent) <= GeneralizedPolynomial::kExponentMergeTol) {
        return format_value(coeff);
    }
    std::string s = format_value(coeff) + "*u";
    if (std::abs(exponent - 1.0) > GeneralizedPolynomial::kExponentMergeTol) {
        s += "^" + format_value(exponent);
    }
    return s;
}

}  // namespace

std::string GeneralizedPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        if (i == 0) {
            s += format_term_body(t.coeff, t.exponent);
        } else if (t.coeff < 0) {
            s += " - " + format_term_body(-t.coeff, t.exponent);
        } else {
            s += " + " + format_term_body(t.coeff, t.exponent);
        }
    }
    return s;
}

GeneralizedPolynomial GeneralizedPolynomial::parse(const std::string& text) {
    std::vector<Term> terms;
    const char* s = text.c_str();
    auto skip_ws = [&s] {
        while (*s == ' ' || *s == '\t') ++s;
    };
    auto fail = [&text](const std::string& why) -> void {
        throw InvalidParamError("cannot parse polynomial \"" + text + "\": " + why);
    };

    skip_ws();
    if (*s == '\0') fail("empty input");

    bool first = true;
    while (*s != '\0') {
        double sign = 1.0;
        if (*s == '+' || *s == '-') {
            sign = (*s == '-') ? -1.0 : 1.0;
            ++s;
            skip_ws();
        } else if (!first) {
            fail("expected '+' or '-' between terms");
        }

        double coeff = sign;
        bool have_number = false;
        char* end = nullptr;
        double value = std::strtod(s, &end);
        if (end != s) {
            coeff = sign * value;
            have_number = true;
            s = end;
            skip_ws();
            if (*s == '*') {
                ++s;
                skip_ws();
                if (*s != 'u') fail("expected 'u' after '*'");
            }
        }

        double exponent = 0.0;
        if (*s == 'u') {
            ++s;
            exponent = 1.0;
            skip_ws();
            if (*s == '^') {
                ++s;
                skip_ws();
                end = nullptr;
                exponent = std::strtod(s, &end);
                if (end == s) fail("expected a number after '^'");
                s = end;
            }
        } else if (!have_number) {
            fail("expected a number or 'u'");
        }

        terms.push_back({coeff, exponent});
        skip_ws();
        first = false;
    }
    return GeneralizedPolynomial(std::move(terms));
}

}  // namespace liefact
