"""Closed-form particular solutions of u'' + g(u) u' + F(u) = 0 by operator
factorization, with numerical verification oracles."""

from ._liefact import (  # noqa: F401
    BhFitCase1,
    BhFitCase2,
    BlowUpError,
    ClosedFormSolution,
    ComplexRootsError,
    DiscriminantError,
    DomainError,
    DvpFit,
    EmdenFit,
    FactorPair,
    FisherFit,
    GeneralizedPolynomial,
    GridSpec,
    ImplicitRelation,
    Interval,
    InvalidParamError,
    LienardForm,
    LiefactError,
    NonMonotonicError,
    OutOfRangeError,
    QuadraticRoots,
    ResidualReport,
    RootBranch,
    SignBranch,
    Trajectory,
    approx_equal,
    bh_fit_case1,
    bh_fit_case2,
    bh_form,
    bh_pair_case1,
    bh_pair_case2,
    bh_solution_case1,
    bh_solution_case2,
    cli_main,
    compose,
    dvp_fit,
    dvp_form,
    dvp_pair,
    dvp_solution,
    emden_fit,
    emden_form,
    emden_pair_case1,
    emden_pair_case2,
    emden_solution_case1,
    emden_solution_case2,
    first_order_rhs,
    fisher_fit_case1,
    fisher_fit_case2,
    fisher_form,
    fisher_pair_case1,
    fisher_pair_case2,
    fisher_solution_case1,
    fisher_solution_case2,
    grid_for_solution,
    implicit_solution,
    integrate_rk4,
    invert_implicit,
    lienard_delta,
    lienard_f3,
    lienard_form_case1,
    lienard_form_case2,
    lienard_implicit_case2,
    lienard_pair_case1,
    lienard_pair_case2,
    lienard_solution_case1,
    real_pow,
    residual_scan,
    solve_quadratic,
    swap,
    verify_factorization,
)
from ._liefact import __version__  # noqa: F401
