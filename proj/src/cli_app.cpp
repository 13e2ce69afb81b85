#include "liefact/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liefact/families.hpp"
#include "liefact/numerics.hpp"

namespace liefact::cli {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string fmt6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// option plumbing
// ---------------------------------------------------------------------------

struct FamilyParams {
    std::optional<double> alpha, beta, gamma, delta, mu, A, B, C, E, a1;
    double tau0 = 0.0;
    double seed = 1.0;
};

struct Selector {
    std::optional<int> case_tag;
    std::optional<RootBranch> root;
    std::optional<SignBranch> sign;

    bool matches(const ClosedFormSolution& sol) const {
        if (case_tag && sol.case_tag() != *case_tag) return false;
        if (root && sol.root_branch() != root) return false;
        if (sign && sol.sign_branch() != sign) return false;
        return true;
    }
};

struct GridArg {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    bool set = false;
};

double need(const std::optional<double>& value, const char* flag, const std::string& family) {
    if (!value) throw InvalidParamError(family + " requires " + flag);
    return *value;
}

GridArg parse_grid(const std::string& text) {
    GridArg grid;
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw InvalidParamError("grid must be lo:hi:count, got \"" + text + "\"");
    }
    try {
        grid.lo = std::stod(text.substr(0, first));
        grid.hi = std::stod(text.substr(first + 1, second - first - 1));
        grid.count = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw InvalidParamError("grid must be lo:hi:count, got \"" + text + "\"");
    }
    if (!(grid.lo < grid.hi) || grid.count < 2) {
        throw InvalidParamError("grid needs lo < hi and count >= 2");
    }
    grid.set = true;
    return grid;
}

RootBranch parse_root(const std::string& s) {
    return s == "plus" ? RootBranch::plus : RootBranch::minus;
}
SignBranch parse_sign(const std::string& s) {
    return s == "plus" ? SignBranch::plus : SignBranch::minus;
}

json params_json(const FamilyParams& p) {
    json out = json::object();
    auto put = [&out](const char* name, const std::optional<double>& v) {
        if (v) out[name] = *v;
    };
    put("alpha", p.alpha);
    put("beta", p.beta);
    put("gamma", p.gamma);
    put("delta", p.delta);
    put("mu", p.mu);
    put("A", p.A);
    put("B", p.B);
    put("C", p.C);
    put("E", p.E);
    put("a1", p.a1);
    out["tau0"] = p.tau0;
    return out;
}

// ---------------------------------------------------------------------------
// instance enumeration
// ---------------------------------------------------------------------------

std::vector<ClosedFormSolution> enumerate_solutions(const std::string& family,
                                                    const FamilyParams& p,
                                                    const Selector& sel) {
    std::vector<ClosedFormSolution> all;
    if (family == "emden") {
        const double alpha = need(p.alpha, "--alpha", family);
        const double beta = need(p.beta, "--beta", family);
        if (!sel.case_tag || *sel.case_tag == 1) {
            const EmdenFit fit = emden_fit(alpha, beta);
            std::vector<RootBranch> roots = {RootBranch::plus};
            if (!fit.double_root) roots.push_back(RootBranch::minus);
            for (const RootBranch r : roots) {
                all.push_back(emden_solution_case1(alpha, beta, r, p.tau0));
            }
        }
        if ((sel.case_tag && *sel.case_tag == 2) || (!sel.case_tag && p.a1)) {
            if (!p.a1) throw InvalidParamError("emden case 2 needs --a1 (a free parameter)");
            all.push_back(emden_solution_case2(beta, *p.a1, p.tau0));
        }
    } else if (family == "lienard") {
        const double A = need(p.A, "--A", family);
        const double B = need(p.B, "--B", family);
        const double C = need(p.C, "--C", family);
        const double a1 = need(p.a1, "--a1", family);
        if (!sel.case_tag || *sel.case_tag == 1) {
            all.push_back(lienard_solution_case1(A, B, C, a1, p.tau0, SignBranch::plus));
            all.push_back(lienard_solution_case1(A, B, C, a1, p.tau0, SignBranch::minus));
        }
        if (!sel.case_tag || *sel.case_tag == 2) {
            try {
                all.push_back(implicit_solution(
                    lienard_implicit_case2(A, B, C, a1, p.tau0, p.seed)));
            } catch (const InvalidParamError&) {
                // No real bracket around this seed (e.g. C < 0 never admits
                // one). Skip case 2 in a family-wide run; an explicit
                // --case 2 still surfaces the error.
                if (sel.case_tag) throw;
            }
        }
    } else if (family == "dvp") {
        if (sel.case_tag && *sel.case_tag != 1) {
            throw InvalidParamError("dvp has a single case");
        }
        const double E = need(p.E, "--E", family);
        const double A = need(p.A, "--A", family);
        all.push_back(dvp_solution(E, A, SignBranch::plus, p.tau0));
        all.push_back(dvp_solution(E, A, SignBranch::minus, p.tau0));
    } else if (family == "fisher") {
        const double mu = need(p.mu, "--mu", family);
        for (const int c : {1, 2}) {
            if (sel.case_tag && *sel.case_tag != c) continue;
            for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
                all.push_back(c == 1 ? fisher_solution_case1(mu, s, p.tau0)
                                     : fisher_solution_case2(mu, s, p.tau0));
            }
        }
    } else if (family == "burgers-huxley") {
        const double alpha = need(p.alpha, "--alpha", family);
        const double beta = need(p.beta, "--beta", family);
        const double gamma = need(p.gamma, "--gamma", family);
        const double delta = need(p.delta, "--delta", family);
        for (const int c : {1, 2}) {
            if (sel.case_tag && *sel.case_tag != c) continue;
            for (const RootBranch r : {RootBranch::plus, RootBranch::minus}) {
                for (const SignBranch s : {SignBranch::plus, SignBranch::minus}) {
                    all.push_back(c == 1
                                      ? bh_solution_case1(alpha, beta, gamma, delta, r, s, p.tau0)
                                      : bh_solution_case2(alpha, beta, gamma, delta, r, s, p.tau0));
                }
            }
        }
    } else {
        throw InvalidParamError("unknown family \"" + family +
                                "\" (see `liefact list` for the catalog)");
    }

    std::vector<ClosedFormSolution> picked;
    for (ClosedFormSolution& sol : all) {
        if (!sel.matches(sol)) continue;
        if (sol.domain().empty()) continue;  // infeasible branch for these parameters
        picked.push_back(std::move(sol));
    }
    if (picked.empty()) {
        throw InvalidParamError("no feasible branch matches the selection for " + family);
    }
    return picked;
}

std::string instance_suffix(const ClosedFormSolution& sol) {
    std::string s = "case" + std::to_string(sol.case_tag());
    if (sol.root_branch()) s += std::string("_root") + to_string(*sol.root_branch());
    if (sol.sign_branch()) s += std::string("_sign") + to_string(*sol.sign_branch());
    return s;
}

std::string out_path_for(const std::string& base, const ClosedFormSolution& sol,
                         bool multiple) {
    if (!multiple) return base;
    const auto slash = base.find_last_of('/');
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return base + "." + instance_suffix(sol);
    }
    return base.substr(0, dot) + "." + instance_suffix(sol) + base.substr(dot);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParamError("cannot open output file " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

int cmd_list(bool as_json) {
    if (as_json) {
        json out = json::array();
        for (const FamilyInfo& info : family_catalog()) {
            out.push_back({{"name", info.name},
                           {"parameters", info.parameters},
                           {"constraints", info.constraints},
                           {"cases", info.cases}});
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (const FamilyInfo& info : family_catalog()) {
        std::printf("%-16s cases: %d  parameters: %-28s %s\n", info.name.c_str(), info.cases,
                    info.parameters.c_str(), info.constraints.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitValue {
    std::string name;
    double value = 0.0;
    std::string origin;  // "identified" (closed-form identification) or "derived" (via compose)
};

struct FitRow {
    int case_tag = 0;
    std::string branch;
    std::vector<FitValue> values;
};

struct FitReport {
    std::string family;
    std::vector<FitRow> rows;
    std::vector<std::string> notes;
};

FitReport build_fit_report(const std::string& family, const FamilyParams& p) {
    FitReport report;
    report.family = family;
    if (family == "emden") {
        const double alpha = need(p.alpha, "--alpha", family);
        const double beta = need(p.beta, "--beta", family);
        const EmdenFit fit = emden_fit(alpha, beta);
        report.rows.push_back({1, "root=plus", {{"a1", fit.a1_plus, "identified"}}});
        if (fit.double_root) {
            report.notes.push_back("alpha^2 = 8*beta: double root, branches coincide");
        } else {
            report.rows.push_back({1, "root=minus", {{"a1", fit.a1_minus, "identified"}}});
        }
        if (p.a1) {
            const double sqb = std::sqrt(beta);
            report.rows.push_back({2,
                                   "(free a1)",
                                   {{"a1", *p.a1, "identified"},
                                    {"G", -sqb / *p.a1, "derived"},
                                    {"E", -3.0 * *p.a1 * sqb, "derived"},
                                    {"GE", 3.0 * beta, "derived"}}});
            report.notes.push_back("case 2 induces the dvp member with G*E = 3*beta, A = 0");
        } else {
            report.notes.push_back("case 2 uses a free a1; pass --a1 to see the induced equation");
        }
    } else if (family == "lienard") {
        const double A = need(p.A, "--A", family);
        const double B = need(p.B, "--B", family);
        const double C = need(p.C, "--C", family);
        const double a1 = need(p.a1, "--a1", family);
        const LienardForm f1 = lienard_form_case1(A, B, C, a1);
        const LienardForm f2 = lienard_form_case2(A, B, C, a1);
        report.rows.push_back({1,
                               "(free a1)",
                               {{"delta", lienard_delta(A, B, C), "derived"},
                                {"g_const", f1.g.coefficient(0.0), "derived"},
                                {"g_u", f1.g.coefficient(1.0), "derived"}}});
        report.rows.push_back({2,
                               "(free a1)",
                               {{"g_const", f2.g.coefficient(0.0), "derived"},
                                {"g_u", f2.g.coefficient(1.0), "derived"},
                                {"g_u2", f2.g.coefficient(2.0), "derived"}}});
        report.notes.push_back("g is induced by the factorization; a1 is a free parameter");
        report.notes.push_back("case 2 solutions come from inverting a monotone relation tau(u)");
    } else if (family == "dvp") {
        const double E = need(p.E, "--E", family);
        const double A = need(p.A, "--A", family);
        const DvpFit fit = dvp_fit(E, A);
        report.rows.push_back(
            {1, "", {{"a1", fit.a1, "identified"}, {"G", fit.G, "identified"}}});
        if (fit.special_A_3_over_E2) {
            report.notes.push_back("A = 3/E^2: the reduced one-parameter correspondence holds");
        }
    } else if (family == "fisher") {
        const double mu = need(p.mu, "--mu", family);
        const FisherFit f1 = fisher_fit_case1(mu);
        const FisherFit f2 = fisher_fit_case2(mu);
        report.rows.push_back(
            {1, "", {{"a1", f1.a1, "identified"}, {"nu", f1.nu, "identified"}}});
        report.rows.push_back({2, "", {{"a1", f2.a1, "identified"}, {"nu", f2.nu, "derived"}}});
        report.notes.push_back("case-2 nu is derived by composing the exchanged pair");
    } else if (family == "burgers-huxley") {
        const double alpha = need(p.alpha, "--alpha", family);
        const double beta = need(p.beta, "--beta", family);
        const double gamma = need(p.gamma, "--gamma", family);
        const double delta = need(p.delta, "--delta", family);
        const BhFitCase1 f1 = bh_fit_case1(alpha, beta, delta);
        const BhFitCase2 f2 = bh_fit_case2(alpha, beta, delta);
        for (const RootBranch r : {RootBranch::plus, RootBranch::minus}) {
            report.rows.push_back({1,
                                   std::string("root=") + to_string(r),
                                   {{"a1", f1.a1(r), "identified"},
                                    {"nu", f1.nu(f1.a1(r), gamma), "identified"}}});
        }
        for (const RootBranch r : {RootBranch::plus, RootBranch::minus}) {
            report.rows.push_back({2,
                                   std::string("root=") + to_string(r),
                                   {{"e1", f2.e1(r), "derived"},
                                    {"nu", f2.nu(f2.e1(r), gamma), "identified"}}});
        }
        report.notes.push_back(
            "case-2 e1 comes from the general-delta quadratic (closed form at delta = 1)");
    } else {
        throw InvalidParamError("unknown family \"" + family +
                                "\" (see `liefact list` for the catalog)");
    }
    return report;
}

int cmd_fit(const std::string& family, const FamilyParams& p, bool as_json) {
    const FitReport report = build_fit_report(family, p);
    if (as_json) {
        json rows = json::array();
        for (const FitRow& row : report.rows) {
            json values = json::object();
            json origins = json::object();
            for (const FitValue& v : row.values) {
                values[v.name] = v.value;
                origins[v.name] = v.origin;
            }
            rows.push_back({{"case", row.case_tag},
                            {"branch", row.branch},
                            {"values", values},
                            {"origins", origins}});
        }
        json out = {{"family", report.family},
                    {"params", params_json(p)},
                    {"fits", rows},
                    {"notes", report.notes}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "family: " << report.family << "\n";
    for (const FitRow& row : report.rows) {
        std::cout << "  case " << row.case_tag;
        if (!row.branch.empty()) std::cout << "  " << row.branch;
        for (const FitValue& v : row.values) {
            std::cout << "  " << v.name << " = " << format_double(v.value) << " [" << v.origin
                      << "]";
        }
        std::cout << "\n";
    }
    for (const std::string& note : report.notes) std::cout << "  note: " << note << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

GridSpec grid_for(const ClosedFormSolution& sol, const GridArg& grid, double standoff) {
    if (grid.set) return {grid.lo, grid.hi, grid.count};
    return grid_for_solution(sol, 201, 5.0, standoff);
}

std::string solve_csv(const ClosedFormSolution& sol, const GridSpec& grid, double standoff) {
    const ResidualReport scan =
        residual_scan(sol.form().g, sol.form().F, sol, grid, 1.0, standoff);
    std::string out = "tau,u,udot,residual\n";
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        const double tau = scan.grid[i];
        out += format_double(tau) + "," + format_double(sol.u(tau)) + "," +
               format_double(sol.udot(tau)) + "," + format_double(scan.residuals[i]) + "\n";
    }
    return out;
}

json solve_json_instance(const ClosedFormSolution& sol, const GridSpec& grid,
                         double standoff) {
    const ResidualReport scan =
        residual_scan(sol.form().g, sol.form().F, sol, grid, 1.0, standoff);
    json rows = json::array();
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
        const double tau = scan.grid[i];
        rows.push_back({tau, sol.u(tau), sol.udot(tau), scan.residuals[i]});
    }
    json derived = json::object();
    for (const auto& [key, value] : sol.derived()) derived[key] = value;
    return {{"family", sol.family()},
            {"case", sol.case_tag()},
            {"branch", sol.branch_label()},
            {"fitted", sol.fitted()},
            {"tau0", sol.tau0()},
            {"domain", format_intervals(sol.domain())},
            {"derived", derived},
            {"notes", sol.notes()},
            {"columns", json::array({"tau", "u", "udot", "residual"})},
            {"rows", rows}};
}

// Clip the requested window to the validity intervals and sample each piece;
// singularities and domain gaps become polyline breaks.
std::vector<std::vector<std::pair<double, double>>> svg_segments(
    const ClosedFormSolution& sol, const GridSpec& grid, double standoff) {
    std::vector<std::vector<std::pair<double, double>>> segments;
    for (const Interval& iv : sol.domain()) {
        double lo = std::max(grid.lo, std::isinf(iv.lo) ? grid.lo : iv.lo + standoff);
        double hi = std::min(grid.hi, std::isinf(iv.hi) ? grid.hi : iv.hi - standoff);
        if (!(lo < hi)) continue;
        const int count = std::max(
            2, static_cast<int>(std::lround(grid.count * (hi - lo) / (grid.hi - grid.lo))));
        std::vector<std::pair<double, double>> seg;
        seg.reserve(count);
        for (int i = 0; i < count; ++i) {
            const double tau = lo + (hi - lo) * i / (count - 1);
            seg.emplace_back(tau, sol.u(tau));
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

int cmd_solve(const std::string& family, const FamilyParams& p, const Selector& sel,
              const GridArg& grid, const std::string& format, const std::string& out_path,
              double standoff) {
    const std::vector<ClosedFormSolution> instances = enumerate_solutions(family, p, sel);
    const bool multiple = instances.size() > 1;

    if (format == "json") {
        json out = json::array();
        for (const ClosedFormSolution& sol : instances) {
            out.push_back(solve_json_instance(sol, grid_for(sol, grid, standoff), standoff));
        }
        const std::string text = json({{"instances", out}}).dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            write_text_file(out_path, text);
            std::cout << out_path << "\n";
        }
        return 0;
    }

    for (const ClosedFormSolution& sol : instances) {
        const GridSpec g = grid_for(sol, grid, standoff);
        std::string content;
        if (format == "svg") {
            content = render_curve_svg(svg_segments(sol, g, standoff),
                                       sol.family() + " case " +
                                           std::to_string(sol.case_tag()) + " " +
                                           sol.branch_label());
        } else {
            content = solve_csv(sol, g, standoff);
        }
        if (out_path.empty()) {
            if (multiple) {
                std::cout << "# instance: family=" << sol.family()
                          << " case=" << sol.case_tag() << " " << sol.branch_label() << "\n";
            }
            std::cout << content;
        } else {
            const std::string path = out_path_for(out_path, sol, multiple);
            write_text_file(path, content);
            std::cout << path << "\n";
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
    int case_tag = 0;
    std::string branch;
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string detail;
};

double rel_dev(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double max_coeff_deviation(const GeneralizedPolynomial& p, const GeneralizedPolynomial& q) {
    double dev = 0.0;
    for (const Term& t : p.terms()) {
        dev = std::max(dev, std::abs(t.coeff - q.coefficient(t.exponent)));
    }
    for (const Term& t : q.terms()) {
        dev = std::max(dev, std::abs(t.coeff - p.coefficient(t.exponent)));
    }
    return dev;
}

// The family's damping/force transcribed from the identification formulas,
// independent of compose(); this is the target the solution is checked
// against.
LienardForm target_form(const std::string& family, const FamilyParams& p,
                        const ClosedFormSolution& sol) {
    if (family == "emden") {
        if (sol.case_tag() == 1) return emden_form(*p.alpha, *p.beta);
        // case 2: the G E = 3 beta member with the beta-scaled cubic force
        return LienardForm(GeneralizedPolynomial({{sol.derived().at("G"), 0.0},
                                                  {sol.derived().at("E"), 2.0}}),
                           GeneralizedPolynomial::monomial(*p.beta, 3.0));
    }
    if (family == "lienard") {
        if (sol.case_tag() == 1) return lienard_form_case1(*p.A, *p.B, *p.C, sol.fitted());
        return lienard_form_case2(*p.A, *p.B, *p.C, sol.fitted());
    }
    if (family == "dvp") return dvp_form(sol.derived().at("G"), *p.E, *p.A);
    if (family == "fisher") return fisher_form(*p.mu, sol.derived().at("nu"));
    return bh_form(*p.alpha, *p.beta, *p.gamma, *p.delta, sol.derived().at("nu"));
}

// Identification round-trip deviation for one instance, or nullopt when the
// family has no identification (lienard: a1 free).
std::optional<double> identification_deviation(const std::string& family,
                                               const FamilyParams& p,
                                               const ClosedFormSolution& sol) {
    if (family == "emden") {
        if (sol.case_tag() == 1) {
            const double a1 = sol.fitted();
            const double back = -std::sqrt(*p.beta) * (2.0 * a1 * a1 + 1.0) / a1;
            return rel_dev(back, *p.alpha);
        }
        return rel_dev(sol.derived().at("GE"), 3.0 * *p.beta);
    }
    if (family == "lienard") return std::nullopt;
    if (family == "dvp") {
        const DvpFit fit = dvp_fit(*p.E, *p.A);
        return std::max(rel_dev(sol.fitted(), fit.a1), rel_dev(sol.derived().at("G"), fit.G));
    }
    if (family == "fisher") {
        const double mu = *p.mu;
        if (sol.case_tag() == 1) {
            return std::max(rel_dev(sol.fitted(), -mu / std::sqrt(2.0)),
                            rel_dev(sol.derived().at("nu"), mu / 2.0 + 1.0 / mu));
        }
        // derived nu: check the u-coefficient of the composed damping, -2 mu
        return std::max(rel_dev(sol.fitted(), -std::sqrt(2.0) * mu),
                        rel_dev(sol.form().g.coefficient(1.0), -2.0 * mu));
    }
    // burgers-huxley: back-substitute the fitted root into the alpha identification
    const double sqb = std::sqrt(*p.beta);
    const double d = *p.delta;
    const double r = sol.fitted();
    const double back = sol.case_tag() == 1 ? -sqb * (r * (1.0 + d) - 1.0 / r)
                                            : sqb * (r * (1.0 + d) - 1.0 / r);
    return rel_dev(back, *p.alpha);
}

std::vector<CheckResult> verify_instance(const std::string& family, const FamilyParams& p,
                                         const ClosedFormSolution& sol, double tol,
                                         double standoff, double perturb_g) {
    std::vector<CheckResult> checks;
    const int case_tag = sol.case_tag();
    const std::string branch = sol.branch_label();
    auto push = [&checks, case_tag, &branch](const std::string& name, double value,
                                             double threshold, const std::string& detail = "") {
        checks.push_back({case_tag, branch, name, value, threshold, value <= threshold, detail});
    };

    LienardForm target = target_form(family, p, sol);
    if (perturb_g != 0.0) {
        target = LienardForm(add(target.g, GeneralizedPolynomial::constant(perturb_g)),
                             target.F);
    }

    if (const std::optional<double> dev = identification_deviation(family, p, sol)) {
        push("identification", *dev, 1e-12);
    }
    push("compose", max_coeff_deviation(compose(sol.pair()).g, target.g) +
                        max_coeff_deviation(compose(sol.pair()).F, target.F),
         1e-12);

    try {
        const GridSpec grid = grid_for_solution(sol, 200, 10.0, standoff);
        const ResidualReport scan = residual_scan(target.g, target.F, sol, grid, tol, standoff);
        push("residual_scan", scan.max_abs_relative, tol);
    } catch (const Error& e) {
        push("residual_scan", std::numeric_limits<double>::infinity(), tol, e.what());
    }

    try {
        push("rk4_track", trajectory_deviation(sol, target.g, target.F), 1e-6);
    } catch (const Error& e) {
        push("rk4_track", std::numeric_limits<double>::infinity(), 1e-6, e.what());
    }
    return checks;
}

int cmd_verify(const std::string& family, const FamilyParams& p, const Selector& sel,
               double tol, double standoff, double perturb_g, bool as_json) {
    const std::vector<ClosedFormSolution> instances = enumerate_solutions(family, p, sel);

    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    for (const ClosedFormSolution& sol : instances) {
        const std::vector<CheckResult> instance_checks =
            verify_instance(family, p, sol, tol, standoff, perturb_g);
        checks.insert(checks.end(), instance_checks.begin(), instance_checks.end());
        for (const std::string& note : sol.notes()) {
            const std::string tagged = "case " + std::to_string(sol.case_tag()) + ": " + note;
            if (std::find(notes.begin(), notes.end(), tagged) == notes.end()) {
                notes.push_back(tagged);
            }
        }
        const auto special = sol.derived().find("A_equals_3_over_E2");
        if (special != sol.derived().end() && special->second != 0.0) {
            const std::string flag = "A = 3/E^2 correspondence holds for these parameters";
            if (std::find(notes.begin(), notes.end(), flag) == notes.end()) {
                notes.push_back(flag);
            }
        }
    }

    const bool all_pass =
        std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });

    if (as_json) {
        json rows = json::array();
        for (const CheckResult& c : checks) {
            json row = {{"case", c.case_tag}, {"branch", c.branch},     {"check", c.name},
                        {"value", c.value},   {"threshold", c.threshold}, {"pass", c.pass}};
            if (!c.detail.empty()) row["detail"] = c.detail;
            rows.push_back(row);
        }
        json out = {{"family", family},
                    {"params", params_json(p)},
                    {"tolerance", tol},
                    {"standoff", standoff},
                    {"checks", rows},
                    {"notes", notes},
                    {"all_pass", all_pass}};
        if (perturb_g != 0.0) out["perturb_g"] = perturb_g;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const CheckResult& c : checks) {
            std::printf("%s  case %d [%s] %-15s value=%.3e (tol %.0e)%s%s\n",
                        c.pass ? "PASS" : "FAIL", c.case_tag, c.branch.c_str(), c.name.c_str(),
                        c.value, c.threshold, c.detail.empty() ? "" : "  ",
                        c.detail.c_str());
        }
        for (const std::string& note : notes) std::printf("note: %s\n", note.c_str());
        std::printf("%s (%zu checks across %zu instances)\n",
                    all_pass ? "all checks passed" : "CHECKS FAILED", checks.size(),
                    instances.size());
    }
    return all_pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

int cmd_invert(const FamilyParams& p, std::vector<double> taus, const GridArg& grid,
               const std::string& out_path) {
    const double A = need(p.A, "--A", "lienard");
    const double B = need(p.B, "--B", "lienard");
    const double C = need(p.C, "--C", "lienard");
    const double a1 = need(p.a1, "--a1", "lienard");
    const ImplicitRelation rel = lienard_implicit_case2(A, B, C, a1, p.tau0, p.seed);

    if (grid.set) {
        for (int i = 0; i < grid.count; ++i) {
            taus.push_back(grid.lo + (grid.hi - grid.lo) * i / (grid.count - 1));
        }
    }
    if (taus.empty()) {
        throw InvalidParamError("invert needs --taus t1,t2,... or --grid lo:hi:count");
    }

    std::string out = "tau,u,tau_residual,status\n";
    for (const double tau : taus) {
        try {
            const double u = invert_implicit(rel, tau);
            const double residual = std::abs(rel.tau0() + rel.tau_of(u) - tau);
            out += format_double(tau) + "," + format_double(u) + "," +
                   format_double(residual) + ",ok\n";
        } catch (const OutOfRangeError&) {
            out += format_double(tau) + ",,,out_of_range\n";
        }
    }
    if (out_path.empty()) {
        std::cout << out;
    } else {
        write_text_file(out_path, out);
        std::cout << out_path << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// compose
// ---------------------------------------------------------------------------

int cmd_compose(const std::string& phi1_text, const std::string& phi2_text,
                const std::string& target_g_text, const std::string& target_f_text,
                double tol, bool as_json) {
    const FactorPair pair(GeneralizedPolynomial::parse(phi1_text),
                          GeneralizedPolynomial::parse(phi2_text));
    const LienardForm composed = compose(pair);
    const GeneralizedPolynomial rhs = first_order_rhs(pair);

    std::optional<bool> match;
    if (!target_g_text.empty() || !target_f_text.empty()) {
        if (target_g_text.empty() || target_f_text.empty()) {
            throw InvalidParamError("--target-g and --target-F must be given together");
        }
        const LienardForm target(GeneralizedPolynomial::parse(target_g_text),
                                 GeneralizedPolynomial::parse(target_f_text));
        match = verify_factorization(target, pair, tol);
    }

    if (as_json) {
        json out = {{"phi1", pair.phi1.to_string()},
                    {"phi2", pair.phi2.to_string()},
                    {"g", composed.g.to_string()},
                    {"F", composed.F.to_string()},
                    {"first_order_rhs", rhs.to_string()}};
        if (match) out["match"] = *match;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "g = " << composed.g.to_string() << "\n";
        std::cout << "F = " << composed.F.to_string() << "\n";
        std::cout << "du/dtau = " << rhs.to_string() << "\n";
        if (match) std::cout << "match: " << (*match ? "true" : "false") << "\n";
    }
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// svg rendering
// ---------------------------------------------------------------------------

std::string render_curve_svg(
    const std::vector<std::vector<std::pair<double, double>>>& segments,
    const std::string& title) {
    constexpr int kWidth = 800;
    constexpr int kHeight = 500;
    constexpr double kLeft = 70.0;
    constexpr double kRight = 780.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 460.0;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& seg : segments) {
        for (const auto& [x, y] : seg) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    auto pad = [](double& lo, double& hi) {
        const double w = hi - lo;
        if (w <= 0.0) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            lo -= 0.05 * w;
            hi += 0.05 * w;
        }
    };
    pad(xmin, xmax);
    pad(ymin, ymax);

    auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto sy = [&](double y) { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        svg << "  <line x1=\"" << fmt6(sx(xv)) << "\" y1=\"" << kBottom << "\" x2=\""
            << fmt6(sx(xv)) << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt6(sx(xv)) << "\" y=\"" << kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt6(xv) << "</text>\n";
        svg << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt6(sy(yv)) << "\" x2=\"" << kLeft
            << "\" y2=\"" << fmt6(sy(yv)) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << kLeft - 9 << "\" y=\"" << fmt6(sy(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt6(yv)
            << "</text>\n";
    }
    for (const auto& seg : segments) {
        if (seg.size() < 2) continue;
        svg << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < seg.size(); ++i) {
            if (i > 0) svg << " ";
            svg << fmt6(sx(seg[i].first)) << "," << fmt6(sy(seg[i].second));
        }
        svg << "\"/>\n";
    }
    svg << "  <text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">tau</text>\n";
    svg << "  <text x=\"16\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (kTop + kBottom) / 2 << ")\">u</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv) {
    // Flush on every exit path: the CLI also runs in-process (python binding).
    struct StdioFlush {
        ~StdioFlush() {
            std::cout.flush();
            std::fflush(stdout);
            std::fflush(stderr);
        }
    } flush_on_exit;

    CLI::App app{"closed-form particular solutions of u'' + g(u) u' + F(u) = 0 "
                 "by operator factorization, with numerical verification"};
    app.require_subcommand(0, 1);

    std::string family;
    FamilyParams params;
    Selector selector;
    GridArg grid;
    std::string grid_text;
    std::string format = "csv";
    std::string out_path;
    std::string root_text, sign_text;
    double tol = 1e-9;
    double compose_tol = 1e-12;
    double standoff = 1e-3;
    double perturb_g = 0.0;
    bool as_json = false;
    std::vector<double> taus;
    std::string phi1_text, phi2_text, target_g_text, target_f_text;
    int case_tag = 0;

    auto add_family_options = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", params.alpha, "emden / burgers-huxley alpha");
        cmd->add_option("--beta", params.beta, "emden / burgers-huxley beta (> 0)");
        cmd->add_option("--gamma", params.gamma, "burgers-huxley gamma");
        cmd->add_option("--delta", params.delta, "burgers-huxley delta (> 0)");
        cmd->add_option("--mu", params.mu, "fisher mu (> 0)");
        cmd->add_option("--A", params.A, "lienard / dvp A");
        cmd->add_option("--B", params.B, "lienard B");
        cmd->add_option("--C", params.C, "lienard C");
        cmd->add_option("--E", params.E, "dvp E (!= 0)");
        cmd->add_option("--a1", params.a1, "fitting parameter where it is free");
        cmd->add_option("--tau0", params.tau0, "integration constant (default 0)");
        cmd->add_option("--seed", params.seed,
                        "seed for the lienard case-2 bracket (default 1)");
    };
    auto add_selector_options = [&](CLI::App* cmd) {
        cmd->add_option("--case", case_tag, "factorization case (1 or 2)")
            ->check(CLI::Range(1, 2));
        cmd->add_option("--root", root_text, "root branch of the fitting quadratic")
            ->check(CLI::IsMember({"plus", "minus"}));
        cmd->add_option("--sign", sign_text, "sign branch inside the closed form")
            ->check(CLI::IsMember({"plus", "minus"}));
    };

    CLI::App* list_cmd = app.add_subcommand("list", "list the equation families");
    list_cmd->add_flag("--json", as_json, "machine-readable output");

    CLI::App* fit_cmd =
        app.add_subcommand("fit", "fit the factorization parameters of a family");
    fit_cmd->add_option("family", family, "family name")->required();
    add_family_options(fit_cmd);
    fit_cmd->add_flag("--json", as_json, "machine-readable output");

    CLI::App* solve_cmd = app.add_subcommand("solve", "emit solution curves");
    solve_cmd->add_option("family", family, "family name")->required();
    add_family_options(solve_cmd);
    add_selector_options(solve_cmd);
    solve_cmd->add_option("--grid", grid_text, "tau grid lo:hi:count (default: auto window)");
    solve_cmd->add_option("--format", format, "csv | json | svg (default csv)")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    solve_cmd->add_option("--out", out_path, "output path (stdout when omitted)");
    solve_cmd->add_option("--standoff", standoff, "singularity standoff (default 1e-3)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run identification, compose, residual and RK4 checks");
    verify_cmd->add_option("family", family, "family name")->required();
    add_family_options(verify_cmd);
    add_selector_options(verify_cmd);
    verify_cmd->add_option("--tol", tol, "residual tolerance (default 1e-9)");
    verify_cmd->add_option("--standoff", standoff, "singularity standoff (default 1e-3)");
    verify_cmd->add_option("--perturb-g", perturb_g,
                           "add a constant to g before checking (sensitivity knob)");
    verify_cmd->add_flag("--json", as_json, "machine-readable output");

    CLI::App* invert_cmd =
        app.add_subcommand("invert", "invert the lienard case-2 relation tau(u)");
    add_family_options(invert_cmd);
    invert_cmd->add_option("--taus", taus, "tau values to invert")->delimiter(',');
    invert_cmd->add_option("--grid", grid_text, "tau grid lo:hi:count");
    invert_cmd->add_option("--out", out_path, "output path (stdout when omitted)");

    CLI::App* compose_cmd = app.add_subcommand(
        "compose", "compose a factor pair into (g, F) and optionally verify a target");
    compose_cmd->add_option("--phi1", phi1_text, "inner factor, e.g. \"-1*u\"")->required();
    compose_cmd->add_option("--phi2", phi2_text, "outer factor, e.g. \"-1*u\"")->required();
    compose_cmd->add_option("--target-g", target_g_text, "claimed damping g(u)");
    compose_cmd->add_option("--target-F", target_f_text, "claimed force F(u)");
    compose_cmd->add_option("--tol", compose_tol, "coefficient tolerance (default 1e-12)");
    compose_cmd->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (case_tag != 0) selector.case_tag = case_tag;
        if (!root_text.empty()) selector.root = parse_root(root_text);
        if (!sign_text.empty()) selector.sign = parse_sign(sign_text);
        if (!grid_text.empty()) grid = parse_grid(grid_text);

        if (list_cmd->parsed()) return cmd_list(as_json);
        if (fit_cmd->parsed()) return cmd_fit(family, params, as_json);
        if (solve_cmd->parsed()) {
            return cmd_solve(family, params, selector, grid, format, out_path, standoff);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(family, params, selector, tol, standoff, perturb_g, as_json);
        }
        if (invert_cmd->parsed()) return cmd_invert(params, taus, grid, out_path);
        if (compose_cmd->parsed()) {
            return cmd_compose(phi1_text, phi2_text, target_g_text, target_f_text, compose_tol,
                               as_json);
        }
        std::cout << app.help();
        return 2;
    } catch (const BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace liefact::cli
