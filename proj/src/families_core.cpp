#include "liefact/families.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace liefact {

const char* to_string(RootBranch b) { return b == RootBranch::plus ? "plus" : "minus"; }
const char* to_string(SignBranch b) { return b == SignBranch::plus ? "plus" : "minus"; }

namespace {

std::string format_bound(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

std::string format_intervals(const std::vector<Interval>& intervals) {
    if (intervals.empty()) return "(empty)";
    std::string s;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (i > 0) s += ", ";
        s += "(" + format_bound(intervals[i].lo) + ", " + format_bound(intervals[i].hi) + ")";
    }
    return s;
}

ClosedFormSolution::ClosedFormSolution(SolutionSpec spec, FactorPair pair,
                                       std::function<double(double)> evaluator,
                                       std::vector<double> singularities,
                                       std::vector<Interval> domain,
                                       std::map<std::string, double> derived,
                                       std::vector<std::string> notes)
    : spec_(std::move(spec)),
      pair_(std::move(pair)),
      form_(compose(pair_)),
      rhs_(first_order_rhs(pair_)),
      rhs_du_(rhs_.derivative()),
      evaluator_(std::move(evaluator)),
      singularities_(std::move(singularities)),
      domain_(std::move(domain)),
      derived_(std::move(derived)),
      notes_(std::move(notes)) {}

std::string ClosedFormSolution::branch_label() const {
    std::string s;
    if (spec_.root) s += std::string("root=") + to_string(*spec_.root);
    if (spec_.sign) {
        if (!s.empty()) s += " ";
        s += std::string("sign=") + to_string(*spec_.sign);
    }
    return s.empty() ? "(single branch)" : s;
}

bool ClosedFormSolution::in_domain(double tau) const {
    for (const Interval& iv : domain_) {
        if (iv.contains(tau)) return true;
    }
    return false;
}

double ClosedFormSolution::u(double tau) const {
    if (!in_domain(tau)) {
        throw DomainError("tau = " + std::to_string(tau) + " outside the validity domain " +
                          format_intervals(domain_) + " of " + spec_.family + " case " +
                          std::to_string(spec_.case_tag) + " [" + branch_label() + "]");
    }
    return evaluator_(tau);
}

double ClosedFormSolution::udot(double tau) const { return rhs_.evaluate(u(tau)); }

double ClosedFormSolution::uddot(double tau) const {
    const double value = u(tau);
    return rhs_du_.evaluate(value) * rhs_.evaluate(value);
}

const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> catalog = {
        {"emden", "alpha, beta", "beta > 0; real branches require alpha^2 >= 8*beta", 2},
        {"lienard", "A, B, C, a1", "B^2 - 4*A*C > 0, a1 != 0, C != 0 (case 2 also A != 0)", 2},
        {"dvp", "E, A", "E != 0 (A = 0 reduces to emden case 2); G is derived", 1},
        {"fisher", "mu", "mu > 0; nu is derived", 2},
        {"burgers-huxley", "alpha, beta, gamma, delta", "beta > 0, delta > 0 (case 2 also gamma != 0); nu is derived", 2},
    };
    return catalog;
}

}  // namespace liefact
