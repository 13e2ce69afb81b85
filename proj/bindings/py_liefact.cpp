#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liefact/cli_app.hpp"
#include "liefact/families.hpp"
#include "liefact/numerics.hpp"

namespace py = pybind11;
using namespace liefact;

namespace {

GeneralizedPolynomial poly_from_pairs(const std::vector<std::pair<double, double>>& terms,
                                      double drop_tol) {
    std::vector<Term> converted;
    converted.reserve(terms.size());
    for (const auto& [coeff, exponent] : terms) converted.push_back({coeff, exponent});
    return GeneralizedPolynomial(std::move(converted), drop_tol);
}

std::vector<std::pair<double, double>> poly_to_pairs(const GeneralizedPolynomial& p) {
    std::vector<std::pair<double, double>> out;
    out.reserve(p.terms().size());
    for (const Term& t : p.terms()) out.emplace_back(t.coeff, t.exponent);
    return out;
}

}  // namespace

PYBIND11_MODULE(_liefact, m) {
    m.doc() = "Closed-form particular solutions of u'' + g(u) u' + F(u) = 0 by operator "
              "factorization, with numerical verification";

    // Base registered first so the derived translators (tried in reverse
    // registration order) win.
    auto base_exc = py::register_exception<Error>(m, "LiefactError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base_exc.ptr());
    py::register_exception<InvalidParamError>(m, "InvalidParamError", base_exc.ptr());
    py::register_exception<ComplexRootsError>(m, "ComplexRootsError", base_exc.ptr());
    py::register_exception<DiscriminantError>(m, "DiscriminantError", base_exc.ptr());
    py::register_exception<BlowUpError>(m, "BlowUpError", base_exc.ptr());
    py::register_exception<OutOfRangeError>(m, "OutOfRangeError", base_exc.ptr());
    py::register_exception<NonMonotonicError>(m, "NonMonotonicError", base_exc.ptr());

    py::class_<GeneralizedPolynomial>(m, "GeneralizedPolynomial")
        .def(py::init(&poly_from_pairs), py::arg("terms"),
             py::arg("drop_tol") = GeneralizedPolynomial::kDefaultDropTol,
             "Build from [(coeff, exponent), ...]; terms are canonicalized")
        .def_static("constant", &GeneralizedPolynomial::constant, py::arg("c"))
        .def_static("monomial", &GeneralizedPolynomial::monomial, py::arg("coeff"),
                    py::arg("exponent"))
        .def_static("parse", &GeneralizedPolynomial::parse, py::arg("text"))
        .def_property_readonly("terms", &poly_to_pairs)
        .def("is_zero", &GeneralizedPolynomial::is_zero)
        .def("coefficient", &GeneralizedPolynomial::coefficient, py::arg("exponent"))
        .def("evaluate", &GeneralizedPolynomial::evaluate, py::arg("u"))
        .def("__call__", &GeneralizedPolynomial::evaluate, py::arg("u"))
        .def("derivative", &GeneralizedPolynomial::derivative)
        .def("__add__", [](const GeneralizedPolynomial& p, const GeneralizedPolynomial& q) {
            return add(p, q);
        })
        .def("__mul__", [](const GeneralizedPolynomial& p, const GeneralizedPolynomial& q) {
            return multiply(p, q);
        })
        .def("__rmul__", [](const GeneralizedPolynomial& p, double c) { return scale(p, c); })
        .def("scale", [](const GeneralizedPolynomial& p, double c) { return scale(p, c); },
             py::arg("c"))
        .def("__str__", &GeneralizedPolynomial::to_string)
        .def("__repr__", [](const GeneralizedPolynomial& p) {
            return "GeneralizedPolynomial(\"" + p.to_string() + "\")";
        });

    m.def("approx_equal", &approx_equal, py::arg("p"), py::arg("q"), py::arg("tol"));
    m.def("real_pow", &real_pow, py::arg("x"), py::arg("p"));

    py::class_<FactorPair>(m, "FactorPair")
        .def(py::init<GeneralizedPolynomial, GeneralizedPolynomial>(), py::arg("phi1"),
             py::arg("phi2"))
        .def_readonly("phi1", &FactorPair::phi1)
        .def_readonly("phi2", &FactorPair::phi2)
        .def("__repr__", [](const FactorPair& p) {
            return "FactorPair(phi1=\"" + p.phi1.to_string() + "\", phi2=\"" +
                   p.phi2.to_string() + "\")";
        });

    py::class_<LienardForm>(m, "LienardForm")
        .def(py::init<GeneralizedPolynomial, GeneralizedPolynomial>(), py::arg("g"),
             py::arg("F"))
        .def_readonly("g", &LienardForm::g)
        .def_readonly("F", &LienardForm::F)
        .def("__repr__", [](const LienardForm& f) {
            return "LienardForm(g=\"" + f.g.to_string() + "\", F=\"" + f.F.to_string() + "\")";
        });

    m.def("compose", &compose, py::arg("pair"));
    m.def("verify_factorization", &verify_factorization, py::arg("target"), py::arg("pair"),
          py::arg("tol"));
    m.def("first_order_rhs", &first_order_rhs, py::arg("pair"));
    m.def("swap", &swap, py::arg("pair"));

    py::enum_<RootBranch>(m, "RootBranch")
        .value("plus", RootBranch::plus)
        .value("minus", RootBranch::minus);
    py::enum_<SignBranch>(m, "SignBranch")
        .value("plus", SignBranch::plus)
        .value("minus", SignBranch::minus);

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("contains", &Interval::contains, py::arg("tau"))
        .def("__repr__", [](const Interval& iv) {
            return "Interval" + format_intervals({iv});
        });

    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def_property_readonly("family", &ClosedFormSolution::family)
        .def_property_readonly("case_tag", &ClosedFormSolution::case_tag)
        .def_property_readonly("root_branch", &ClosedFormSolution::root_branch)
        .def_property_readonly("sign_branch", &ClosedFormSolution::sign_branch)
        .def_property_readonly("branch_label", &ClosedFormSolution::branch_label)
        .def_property_readonly("fitted", &ClosedFormSolution::fitted)
        .def_property_readonly("tau0", &ClosedFormSolution::tau0)
        .def_property_readonly("pair", &ClosedFormSolution::pair)
        .def_property_readonly("form", &ClosedFormSolution::form)
        .def_property_readonly("singularities", &ClosedFormSolution::singularities)
        .def_property_readonly("domain", &ClosedFormSolution::domain)
        .def_property_readonly("derived", &ClosedFormSolution::derived)
        .def_property_readonly("notes", &ClosedFormSolution::notes)
        .def("in_domain", &ClosedFormSolution::in_domain, py::arg("tau"))
        .def("u", &ClosedFormSolution::u, py::arg("tau"))
        .def("udot", &ClosedFormSolution::udot, py::arg("tau"))
        .def("uddot", &ClosedFormSolution::uddot, py::arg("tau"))
        .def("__repr__", [](const ClosedFormSolution& s) {
            return "<ClosedFormSolution " + s.family() + " case " +
                   std::to_string(s.case_tag()) + " [" + s.branch_label() + "]>";
        });

    py::class_<EmdenFit>(m, "EmdenFit")
        .def_readonly("a1_plus", &EmdenFit::a1_plus)
        .def_readonly("a1_minus", &EmdenFit::a1_minus)
        .def_readonly("double_root", &EmdenFit::double_root);
    m.def("emden_fit", &emden_fit, py::arg("alpha"), py::arg("beta"));
    m.def("emden_pair_case1", &emden_pair_case1, py::arg("beta"), py::arg("a1"));
    m.def("emden_pair_case2", &emden_pair_case2, py::arg("beta"), py::arg("a1"));
    m.def("emden_form", &emden_form, py::arg("alpha"), py::arg("beta"));
    m.def("emden_solution_case1", &emden_solution_case1, py::arg("alpha"), py::arg("beta"),
          py::arg("branch"), py::arg("tau0") = 0.0);
    m.def("emden_solution_case2", &emden_solution_case2, py::arg("beta"), py::arg("a1"),
          py::arg("tau0") = 0.0);

    m.def("lienard_f3", &lienard_f3, py::arg("A"), py::arg("B"), py::arg("C"));
    m.def("lienard_delta", &lienard_delta, py::arg("A"), py::arg("B"), py::arg("C"));
    m.def("lienard_pair_case1", &lienard_pair_case1, py::arg("A"), py::arg("B"), py::arg("C"),
          py::arg("a1"));
    m.def("lienard_pair_case2", &lienard_pair_case2, py::arg("A"), py::arg("B"), py::arg("C"),
          py::arg("a1"));
    m.def("lienard_form_case1", &lienard_form_case1, py::arg("A"), py::arg("B"), py::arg("C"),
          py::arg("a1"));
    m.def("lienard_form_case2", &lienard_form_case2, py::arg("A"), py::arg("B"), py::arg("C"),
          py::arg("a1"));
    m.def("lienard_solution_case1", &lienard_solution_case1, py::arg("A"), py::arg("B"),
          py::arg("C"), py::arg("a1"), py::arg("tau0") = 0.0,
          py::arg("sign") = SignBranch::plus);

    py::class_<ImplicitRelation>(m, "ImplicitRelation")
        .def(py::init<double, double, double, double, double, double, double>(), py::arg("A"),
             py::arg("B"), py::arg("C"), py::arg("a1"), py::arg("tau0"),
             py::arg("bracket_lo"), py::arg("bracket_hi"))
        .def_property_readonly("A", &ImplicitRelation::A)
        .def_property_readonly("B", &ImplicitRelation::B)
        .def_property_readonly("C", &ImplicitRelation::C)
        .def_property_readonly("delta", &ImplicitRelation::delta)
        .def_property_readonly("a1", &ImplicitRelation::a1)
        .def_property_readonly("tau0", &ImplicitRelation::tau0)
        .def_property_readonly("bracket_lo", &ImplicitRelation::bracket_lo)
        .def_property_readonly("bracket_hi", &ImplicitRelation::bracket_hi)
        .def_property_readonly("F3", &ImplicitRelation::F3)
        .def("tau_of", &ImplicitRelation::tau_of, py::arg("u"))
        .def("dtau_du", &ImplicitRelation::dtau_du, py::arg("u"));
    m.def("lienard_implicit_case2", &lienard_implicit_case2, py::arg("A"), py::arg("B"),
          py::arg("C"), py::arg("a1"), py::arg("tau0") = 0.0, py::arg("seed") = 1.0);

    py::class_<DvpFit>(m, "DvpFit")
        .def_readonly("a1", &DvpFit::a1)
        .def_readonly("G", &DvpFit::G)
        .def_readonly("special_A_3_over_E2", &DvpFit::special_A_3_over_E2);
    m.def("dvp_fit", &dvp_fit, py::arg("E"), py::arg("A"));
    m.def("dvp_pair", &dvp_pair, py::arg("A"), py::arg("a1"));
    m.def("dvp_form", &dvp_form, py::arg("G"), py::arg("E"), py::arg("A"));
    m.def("dvp_solution", &dvp_solution, py::arg("E"), py::arg("A"), py::arg("sign"),
          py::arg("tau0") = 0.0);

    py::class_<FisherFit>(m, "FisherFit")
        .def_readonly("a1", &FisherFit::a1)
        .def_readonly("nu", &FisherFit::nu)
        .def_readonly("nu_derived", &FisherFit::nu_derived);
    m.def("fisher_fit_case1", &fisher_fit_case1, py::arg("mu"));
    m.def("fisher_fit_case2", &fisher_fit_case2, py::arg("mu"));
    m.def("fisher_pair_case1", &fisher_pair_case1, py::arg("a1"));
    m.def("fisher_pair_case2", &fisher_pair_case2, py::arg("a1"));
    m.def("fisher_form", &fisher_form, py::arg("mu"), py::arg("nu"));
    m.def("fisher_solution_case1", &fisher_solution_case1, py::arg("mu"), py::arg("sign"),
          py::arg("tau0") = 0.0);
    m.def("fisher_solution_case2", &fisher_solution_case2, py::arg("mu"), py::arg("sign"),
          py::arg("tau0") = 0.0);

    py::class_<BhFitCase1>(m, "BhFitCase1")
        .def_readonly("a1_plus", &BhFitCase1::a1_plus)
        .def_readonly("a1_minus", &BhFitCase1::a1_minus)
        .def("nu", &BhFitCase1::nu, py::arg("a1"), py::arg("gamma"));
    py::class_<BhFitCase2>(m, "BhFitCase2")
        .def_readonly("e1_plus", &BhFitCase2::e1_plus)
        .def_readonly("e1_minus", &BhFitCase2::e1_minus)
        .def("nu", &BhFitCase2::nu, py::arg("e1"), py::arg("gamma"));
    m.def("bh_fit_case1", &bh_fit_case1, py::arg("alpha"), py::arg("beta"), py::arg("delta"));
    m.def("bh_fit_case2", &bh_fit_case2, py::arg("alpha"), py::arg("beta"), py::arg("delta"));
    m.def("bh_pair_case1", &bh_pair_case1, py::arg("beta"), py::arg("gamma"), py::arg("delta"),
          py::arg("a1"));
    m.def("bh_pair_case2", &bh_pair_case2, py::arg("beta"), py::arg("gamma"), py::arg("delta"),
          py::arg("e1"));
    m.def("bh_form", &bh_form, py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
          py::arg("delta"), py::arg("nu"));
    m.def("bh_solution_case1", &bh_solution_case1, py::arg("alpha"), py::arg("beta"),
          py::arg("gamma"), py::arg("delta"), py::arg("root"), py::arg("sign"),
          py::arg("tau0") = 0.0);
    m.def("bh_solution_case2", &bh_solution_case2, py::arg("alpha"), py::arg("beta"),
          py::arg("gamma"), py::arg("delta"), py::arg("root"), py::arg("sign"),
          py::arg("tau0") = 0.0);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("tau", &Trajectory::tau)
        .def_readonly("u", &Trajectory::u)
        .def_readonly("v", &Trajectory::v)
        .def_readonly("h", &Trajectory::h);
    m.def("integrate_rk4", &integrate_rk4, py::arg("g"), py::arg("F"), py::arg("u0"),
          py::arg("v0"), py::arg("tau_begin"), py::arg("tau_end"), py::arg("h"));

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double lo, double hi, int count) {
                 return GridSpec{lo, hi, count};
             }),
             py::arg("lo"), py::arg("hi"), py::arg("count"))
        .def_readonly("lo", &GridSpec::lo)
        .def_readonly("hi", &GridSpec::hi)
        .def_readonly("count", &GridSpec::count);
    m.def("grid_for_solution", &grid_for_solution, py::arg("sol"), py::arg("count"),
          py::arg("halfwidth") = 10.0, py::arg("standoff") = 1e-3);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("grid", &ResidualReport::grid)
        .def_readonly("residuals", &ResidualReport::residuals)
        .def_readonly("max_abs_relative", &ResidualReport::max_abs_relative)
        .def_readonly("tolerance_used", &ResidualReport::tolerance_used)
        .def_readonly("pass_", &ResidualReport::pass)
        .def("__bool__", [](const ResidualReport& r) { return r.pass; });
    m.def("residual_scan", &residual_scan, py::arg("g"), py::arg("F"), py::arg("sol"),
          py::arg("grid"), py::arg("tolerance") = 1e-9, py::arg("standoff") = 1e-3);

    py::class_<QuadraticRoots>(m, "QuadraticRoots")
        .def_readonly("count", &QuadraticRoots::count)
        .def_readonly("plus", &QuadraticRoots::plus)
        .def_readonly("minus", &QuadraticRoots::minus);
    m.def("solve_quadratic", &solve_quadratic, py::arg("a"), py::arg("b"), py::arg("c"));

    m.def("invert_implicit", &invert_implicit, py::arg("rel"), py::arg("tau"));
    m.def("implicit_solution", &implicit_solution, py::arg("rel"));

    m.def("cli_main", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv;
        argv.push_back("liefact");
        for (const std::string& a : args) argv.push_back(a.c_str());
        return liefact::cli::run(static_cast<int>(argv.size()), argv.data());
    },
          py::arg("args"), "Run the command-line interface in-process");

    m.attr("__version__") = "0.1.0";
}
