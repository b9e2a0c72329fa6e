"""Exact moments ``M_k(W)`` = constant term of ``W^k``, and their growth rate.

For positive coefficients the growth rate ``limsup M_k^{1/k}`` equals the
conifold value ``T``, so the generating function ``sum_k M_k t^k`` has radius
of convergence ``1/T``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import InsufficientData, TermBudgetExceeded
from .laurent import LaurentPolynomial
from .polytope import nonvanishing_certificate, validate_support
from .solver import SolverOptions, find_conifold_point

DEFAULT_TERM_BUDGET = 10**7


@dataclass(frozen=True)
class MomentSequence:
    kmax: int
    values: tuple  # Fractions M_0..M_kmax
    period: int | None
    support: frozenset

    def to_json(self, include_values: bool = True) -> dict:
        doc = {
            "kmax": self.kmax,
            "period": self.period,
            "nonzero_count": len(self.support),
        }
        if include_values:
            doc["values"] = [_exact_text(v) for v in self.values]
        return doc


def _exact_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def predicted_terms(W: LaurentPolynomial, kmax: int) -> int:
    """Upper bound ``(kmax * width + 1)^d`` on the term count of ``W^kmax``.

    ``width`` is the largest coordinate extent of the Newton polytope, so the
    bound covers the bounding box of ``kmax * Newton polytope``.
    """
    exps = W.exponents
    width = max(max(e[i] for e in exps) - min(e[i] for e in exps) for i in range(W.dimension))
    return (kmax * width + 1) ** W.dimension


def moment_sequence(
    W: LaurentPolynomial,
    kmax: int,
    term_budget: int = DEFAULT_TERM_BUDGET,
    prune: bool = True,
) -> MomentSequence:
    """Exact ``M_0..M_kmax`` by repeated sparse multiplication ``P_{k+1} = P_k W``.

    With ``prune`` set, terms that cannot return to the origin before
    ``kmax`` are dropped after each step; the moments are unchanged.
    """
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    predicted = predicted_terms(W, kmax)
    if predicted > term_budget:
        raise TermBudgetExceeded(
            f"W^{kmax} may have up to {predicted} terms (budget {term_budget})"
        )

    d = W.dimension
    exps = W.exponents
    lows = [kmax * min(0, min(e[i] for e in exps)) for i in range(d)]
    highs = [kmax * max(0, max(e[i] for e in exps)) for i in range(d)]
    radix = [h - lo + 1 for h, lo in zip(highs, lows)]

    # pack exponent vectors into single ints; shifts are then plain additions
    def pack(vec):
        key, mult = 0, 1
        for i in range(d):
            key += (vec[i] - lows[i]) * mult
            mult *= radix[i]
        return key

    origin = pack((0,) * d)
    # integer arithmetic on W scaled by the common denominator
    den = reduce(math.lcm, (c.denominator for c in W.terms.values()), 1)
    shifts = [(pack(e) - origin, int(c * den)) for e, c in W.terms.items()]

    keep = _return_filter(W, kmax) if prune else None
    values = [Fraction(1)]
    power = {origin: 1}
    for k in range(1, kmax + 1):
        nxt: dict[int, int] = {}
        get = nxt.get
        for shift, coef in shifts:
            if coef == 1:
                for key, val in power.items():
                    target = key + shift
                    nxt[target] = get(target, 0) + val
            else:
                for key, val in power.items():
                    target = key + shift
                    nxt[target] = get(target, 0) + val * coef
        values.append(Fraction(nxt.get(origin, 0), den**k))
        if keep is not None and k < kmax:
            power = keep(nxt, kmax - k, lows, radix)
        else:
            power = nxt

    support = frozenset(k for k, v in enumerate(values) if v != 0)
    validation = validate_support(W)
    period = nonvanishing_certificate(validation)[1] if validation.origin_interior else None
    return MomentSequence(kmax=kmax, values=tuple(values), period=period, support=support)


def _return_filter(W: LaurentPolynomial, kmax: int):
    """Build a pruning step for ``moment_sequence``, or None if unavailable.

    A term ``x^e`` of ``W^k`` can reach the constant term of ``W^(k+r)`` only
    if ``-e`` lies in ``r * Newton polytope``. Facet inequalities come from
    Qhull in floating point, so the test keeps a safety margin: it may retain
    dead terms but never drops live ones.
    """
    exps = np.array(W.exponents, dtype=float)
    d = W.dimension
    if d == 1:
        lo, hi = exps.min(), exps.max()
        normals, offsets = np.array([[1.0], [-1.0]]), np.array([hi, -lo])
    else:
        if not validate_support(W).origin_interior:
            return None
        try:
            hull = ConvexHull(exps)
        except QhullError:
            return None
        normals = hull.equations[:, :-1]
        offsets = -hull.equations[:, -1]
    if not np.all(offsets > 0):
        return None
    margin = 1e-7 * (1.0 + np.abs(exps).max()) * max(1, kmax)

    def keep(power, remaining, lows, radix):
        keys = np.fromiter(power.keys(), dtype=object, count=len(power))
        coords = np.empty((len(keys), d))
        rest = keys
        for i in range(d):
            coords[:, i] = (rest % radix[i]).astype(float) + lows[i]
            rest = rest // radix[i]
        # -e in r * Delta  <=>  normals . (-e) <= r * offsets
        ok = np.all(-coords @ normals.T <= remaining * offsets + margin, axis=1)
        return {k: power[k] for k, flag in zip(keys.tolist(), ok.tolist()) if flag}

    return keep


def _log(v: Fraction) -> float:
    return math.log(v.numerator) - math.log(v.denominator)


def period_ratios(seq: MomentSequence) -> list[tuple[int, float]]:
    """``(jK, M_{(j+1)K} / M_{jK})`` for ``j >= 1``, with ``K`` the period."""
    K = seq.period
    if not K:
        return []
    return [
        (k, math.exp(_log(seq.values[k + K]) - _log(seq.values[k])))
        for k in range(K, seq.kmax - K + 1, K)
    ]


def growth_estimate(seq: MomentSequence) -> float:
    """Estimate ``limsup M_k^{1/k}``.

    Uses the per-period ratio ``(M_{k2} / M_{k1})^{1/(k2 - k1)}`` at the two
    largest support indices spaced by the period; the polynomial prefactor of
    ``M_k`` cancels to first order. Falls back to ``M_k^{1/k}`` at the largest
    nonzero index.
    """
    nonzero = sorted(k for k in seq.support if k > 0)
    if len(seq.support) < 10:
        raise InsufficientData(f"only {len(seq.support)} nonzero moments up to k={seq.kmax}")
    K = seq.period
    if K:
        for k2 in reversed(nonzero):
            k1 = k2 - K
            if k1 > 0 and k1 in seq.support:
                return math.exp((_log(seq.values[k2]) - _log(seq.values[k1])) / K)
    k = nonzero[-1]
    return math.exp(_log(seq.values[k]) / k)


@dataclass(frozen=True)
class DKReport:
    T: float
    estimate: float
    relative_gap: float
    R: float

    def to_json(self) -> dict:
        return {"T": self.T, "estimate": self.estimate, "relative_gap": self.relative_gap, "R": self.R}


def dk_report(
    W: LaurentPolynomial,
    kmax: int,
    opts: SolverOptions | None = None,
    seq: MomentSequence | None = None,
    critical_value: float | None = None,
) -> DKReport:
    """Compare the moment growth rate with the conifold value ``T``."""
    if critical_value is None:
        critical_value = find_conifold_point(W, opts).critical_value
    seq = seq if seq is not None else moment_sequence(W, kmax)
    estimate = growth_estimate(seq)
    T = float(critical_value)
    return DKReport(T=T, estimate=estimate, relative_gap=abs(estimate - T) / T, R=1.0 / T)


def moments_csv(seq: MomentSequence) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "M_k"])
    for k, v in enumerate(seq.values):
        writer.writerow([k, _exact_text(v)])
    return buf.getvalue()

