"""Damped Newton search for the conifold point.

With positive coefficients and the origin strictly inside the Newton polytope,
``u -> W(exp u)`` is strongly convex and coercive, so it has exactly one
critical point on the positive locus: its global minimum ``P``. The critical
value ``T = W(P)`` is the main output.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisViolated, MaxIterations, NotPositiveDefinite
from .laurent import OVERFLOW_EXPONENT, LaurentPolynomial, as_log_point, hessian_log, log_weights
from .linalg import jacobi_eigenvalues, solve_spd
from .polytope import SupportValidation, validate_support

log = logging.getLogger(__name__)

# backtracking gives up below this fraction of the Newton step
_MIN_STEP = 1e-20


@dataclass(frozen=True)
class SolverOptions:
    gradient_tolerance: float = 1e-10
    max_iterations: int = 200
    max_step: float = 10.0
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5

    def __post_init__(self):
        for name in ("gradient_tolerance", "max_step", "armijo_c", "backtrack_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        if not self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must be < 1")


@dataclass
class ConifoldReport:
    point_log: np.ndarray
    point_mult: np.ndarray
    critical_value: float
    hessian_spectrum: np.ndarray
    iterations: int
    final_gradient_norm: float
    trace: list = field(default_factory=list)  # (value, gradient sup-norm, step size)
    decrements: list = field(default_factory=list)  # W(u_k+1) - W(u_k), each < 0

    def to_json(self) -> dict:
        return {
            "point_log": [float(v) for v in self.point_log],
            "point_mult": [float(v) for v in self.point_mult],
            "critical_value": float(self.critical_value),
            "hessian_spectrum": [float(v) for v in self.hessian_spectrum],
            "iterations": self.iterations,
            "final_gradient_norm": float(self.final_gradient_norm),
            "trace": [[float(a), float(b), float(c)] for a, b, c in self.trace],
            "decrements": [float(v) for v in self.decrements],
        }


def _decrease(W: LaurentPolynomial, weights, u, step) -> float:
    """``W(u + step) - W(u)`` as ``sum_n w_n expm1(<step, n>)``.

    Accurate far below one ulp of ``W``, so the line search keeps working
    after the value itself stops changing in binary64. ``inf`` if the trial
    point trips the overflow guard.
    """
    E = W.exponent_matrix
    if float((E @ (u + step)).max()) > OVERFLOW_EXPONENT:
        return math.inf
    return math.fsum(weights * np.expm1(E @ step))


def newton_minimize(W: LaurentPolynomial, opts: SolverOptions | None = None, start=None):
    """Raw damped Newton iteration, no hypothesis gate.

    Returns ``(u, value, gradient_norm, iterations, trace, decrements)``.
    """
    opts = opts or SolverOptions()
    u = as_log_point(np.zeros(W.dimension) if start is None else start, W.dimension)
    trace = []
    decrements = []
    weights, value, grad, hess = _derivatives(W, u)
    for it in range(opts.max_iterations + 1):
        gnorm = float(np.max(np.abs(grad)))
        # relative to W itself: the whole iteration is then invariant under
        # W -> cW, and tol * W <= tol * max(1, W) keeps the weaker contract
        if gnorm <= opts.gradient_tolerance * value:
            return u, value, gnorm, it, trace, decrements
        if it == opts.max_iterations:
            break
        try:
            step, _ = solve_spd(hess, -grad)
        except np.linalg.LinAlgError:
            # only reachable without the hypothesis
            step = -grad
        cap = float(np.max(np.abs(step)))
        if cap > opts.max_step:
            step *= opts.max_step / cap
        slope = float(grad @ step)
        if slope >= 0:
            step, slope = -grad, -float(grad @ grad)
        t = 1.0
        while True:
            change = _decrease(W, weights, u, t * step)
            if change <= opts.armijo_c * t * slope and change < 0:
                break
            t *= opts.backtrack_factor
            if t < _MIN_STEP:
                raise MaxIterations(
                    f"line search stalled at iteration {it} (gradient {gnorm:.3e})", trace
                )
        u = u + t * step
        weights, value, grad, hess = _derivatives(W, u)
        trace.append((value, float(np.max(np.abs(grad))), t))
        decrements.append(change)
        log.debug("iter %d value %.17g |g| %.3e t %g", it, value, trace[-1][1], t)
    raise MaxIterations(
        f"gradient {gnorm:.3e} above tolerance after {opts.max_iterations} iterations", trace
    )


def _derivatives(W, u):
    weights = log_weights(W, u)
    E = W.exponent_matrix
    H = (E * weights[:, None]).T @ E
    return weights, float(weights.sum()), E.T @ weights, 0.5 * (H + H.T)


def certify_morse(W: LaurentPolynomial, point) -> np.ndarray:
    """Ascending Hessian eigenvalues at ``point``; all must exceed ``1e-12 * trace``."""
    H = hessian_log(W, point)
    spectrum = jacobi_eigenvalues(H)
    threshold = 1e-12 * float(np.trace(H))
    if not spectrum[0] > threshold:
        raise NotPositiveDefinite(
            f"smallest Hessian eigenvalue {spectrum[0]:.3e} below {threshold:.3e}"
        )
    return spectrum


def find_conifold_point(
    W: LaurentPolynomial,
    opts: SolverOptions | None = None,
    *,
    start=None,
    validation: SupportValidation | None = None,
) -> ConifoldReport:
    opts = opts or SolverOptions()
    validation = validation or validate_support(W)
    if not validation.origin_interior:
        raise HypothesisViolated(
            "origin is not strictly inside the Newton polytope", validation
        )
    u, value, gnorm, iterations, trace, decrements = newton_minimize(W, opts, start)
    return ConifoldReport(
        point_log=u,
        point_mult=np.exp(u),
        critical_value=value,
        hessian_spectrum=certify_morse(W, u),
        iterations=iterations,
        final_gradient_norm=gnorm,
        trace=trace,
        decrements=decrements,
    )
