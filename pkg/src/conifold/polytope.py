"""Exact check that the origin lies strictly inside the Newton polytope.

The test is the linear program

    maximize eps  over  lambda_n = mu_n + eps,  mu_n >= 0,  eps >= 0
    subject to sum_n lambda_n = 1,  sum_n lambda_n n = 0

solved in rational arithmetic. The origin is interior iff ``eps* > 0`` and the
exponent vectors span R^d. When the polytope is full-dimensional but the
origin is not interior, the LP dual yields an integer direction ``v`` with
``<v, n> <= 0`` for every exponent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .errors import NoCertificate
from .exact import affine_dimension, integer_rank
from .laurent import LaurentPolynomial
from .simplex import solve_lp


@dataclass(frozen=True)
class SupportValidation:
    dimension: int
    polytope_dim: int
    origin_interior: bool
    certificate: dict = field(default_factory=dict)  # exponent -> Fraction
    failure_direction: tuple | None = None
    epsilon: Fraction = Fraction(0)

    def verify(self) -> bool:
        """Re-check the certificate (or failure direction) in exact arithmetic."""
        if self.origin_interior:
            lam = self.certificate
            if not lam or any(v <= 0 for v in lam.values()):
                return False
            if sum(lam.values()) != 1:
                return False
            return all(
                sum(v * e[i] for e, v in lam.items()) == 0 for i in range(self.dimension)
            )
        return True

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "polytope_dim": self.polytope_dim,
            "origin_interior": self.origin_interior,
            "certificate": [
                {"e": list(e), "lambda": _frac_text(v)} for e, v in self.certificate.items()
            ]
            if self.origin_interior
            else None,
            "failure_direction": list(self.failure_direction)
            if self.failure_direction is not None
            else None,
        }


def _frac_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _integer_direction(vec) -> tuple:
    vec = [Fraction(v) for v in vec]
    den = reduce(math.lcm, (v.denominator for v in vec), 1)
    ints = [int(v * den) for v in vec]
    g = reduce(math.gcd, ints, 0)
    return tuple(i // g for i in ints) if g else tuple(ints)


def _separating_direction(exps, d):
    """Fallback: find v != 0 with <v,n> <= 0 and sum_n <v,n> = -1 by a direct LP."""
    m = len(exps)
    # variables: v+ (d), v- (d), slack s_n (m)
    A, b = [], []
    for e in exps:
        A.append(list(e) + [-x for x in e] + [1 if k == len(A) else 0 for k in range(m)])
        b.append(0)
    total = [sum(e[i] for e in exps) for i in range(d)]
    A.append(total + [-x for x in total] + [0] * m)
    b.append(-1)
    res = solve_lp([0] * (2 * d + m), A, b)
    if res.status != "optimal":
        return None
    return [res.x[i] - res.x[d + i] for i in range(d)]


def _is_failure_direction(v, exps) -> bool:
    return any(v) and all(sum(a * b for a, b in zip(v, e)) <= 0 for e in exps)


def validate_support(W: LaurentPolynomial) -> SupportValidation:
    exps = W.exponents
    d = W.dimension
    m = len(exps)
    pdim = affine_dimension(exps)
    spans = integer_rank(exps) == d

    # columns: mu_1..mu_m, eps
    A = [[1] * m + [m]]
    for i in range(d):
        A.append([e[i] for e in exps] + [sum(e[i] for e in exps)])
    b = [1] + [0] * d
    res = solve_lp([0] * m + [1], A, b)

    interior = False
    certificate = {}
    eps = Fraction(0)
    dual_direction = None
    if res.status == "optimal":
        eps = res.objective
        if eps > 0 and spans:
            interior = True
            certificate = {e: res.x[k] + eps for k, e in enumerate(exps)}
        elif eps == 0:
            # dual: <y_v, n> >= 0 for all n, so -y_v separates
            dual_direction = [-y for y in res.dual[1:]]
    elif res.status == "infeasible":
        # Farkas ray: y_0 + <y_v, n> <= 0 with y_0 > 0
        dual_direction = list(res.dual[1:])

    failure = None
    if not interior and pdim == d:
        if dual_direction is not None:
            cand = _integer_direction(dual_direction)
            if _is_failure_direction(cand, exps):
                failure = cand
        if failure is None:
            raw = _separating_direction(exps, d)
            if raw is not None:
                failure = _integer_direction(raw)

    return SupportValidation(
        dimension=d,
        polytope_dim=pdim,
        origin_interior=interior,
        certificate=certificate,
        failure_direction=failure,
        epsilon=eps,
    )


def nonvanishing_certificate(validation: SupportValidation):
    """Integer weights ``m_n`` with ``sum m_n n = 0`` and the period ``K = sum m_n``.

    ``W^K`` then contains ``prod_n (a_n x^n)^{m_n} = const`` with a positive
    coefficient, so ``M_{jK} > 0`` for every ``j >= 1``.
    """
    if not validation.origin_interior:
        raise NoCertificate("origin is not strictly inside the Newton polytope")
    lam = validation.certificate
    den = reduce(math.lcm, (v.denominator for v in lam.values()), 1)
    ints = {e: int(v * den) for e, v in lam.items()}
    g = reduce(math.gcd, ints.values(), 0)
    weights = {e: v // g for e, v in ints.items()}
    return weights, sum(weights.values())
