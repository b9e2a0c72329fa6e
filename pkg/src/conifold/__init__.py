"""Conifold point of a positive Laurent polynomial: the unique positive
critical point, its critical value, moment growth, and toric Fano bounds."""

from .errors import ConifoldError, HypothesisViolated
from .laurent import (
    LaurentPolynomial,
    evaluate_log,
    gradient_log,
    hessian_log,
    parse_polynomial,
    substitute_monomial,
    to_text,
)
from .moments import MomentSequence, dk_report, growth_estimate, moment_sequence
from .polytope import SupportValidation, nonvanishing_certificate, validate_support
from .solver import ConifoldReport, SolverOptions, certify_morse, find_conifold_point
from .toric import FanInput, ToricReport, builtin_fan, potential_from_fan, toric_report

__version__ = "0.1.0"
