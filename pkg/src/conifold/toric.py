"""Monotone toric Fano potentials ``W_X = sum_v x^v`` and the invariant ``T_Y``.

For a smooth toric Fano ``Y`` of dimension ``d`` with ``r`` rays,
``b_2 = r - d``, so the upper bound ``dim Y + b_2(Y)`` is just ``r``: the
critical value is a minimum, hence at most ``W(1, ..., 1) = r``. The
conjectured lower bound is ``d + 1``, attained by projective space.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce
from importlib import resources
from typing import Sequence

from .errors import DegenerateSpan, DuplicateRay, HypothesisViolated, NonPrimitiveRay, UnknownName
from .exact import integer_rank
from .laurent import LaurentPolynomial
from .polytope import validate_support
from .solver import ConifoldReport, SolverOptions, find_conifold_point

BOUND_SLACK = 1e-9

_ALIASES = {"hexagon": "dP5"}
BUILTIN_FANS = ("P1", "P2", "P3", "P4", "P1xP1", "P1xP2", "dP7", "dP6", "dP5", "hexagon")


@dataclass(frozen=True)
class FanInput:
    dimension: int
    rays: tuple  # tuple of int tuples

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence[int]], dimension: int | None = None) -> "FanInput":
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        if not rays:
            raise DegenerateSpan("a fan needs at least one ray")
        d = len(rays[0]) if dimension is None else int(dimension)
        if d < 1 or any(len(r) != d for r in rays):
            raise DegenerateSpan(f"every ray must have length {d}")
        seen = set()
        for r in rays:
            if reduce(math.gcd, r, 0) != 1:
                raise NonPrimitiveRay(f"ray {list(r)} is not primitive")
            if r in seen:
                raise DuplicateRay(f"ray {list(r)} appears twice")
            seen.add(r)
        if integer_rank(rays) != d:
            raise DegenerateSpan("rays do not span R^d")
        return cls(d, rays)

    @classmethod
    def from_json(cls, doc) -> "FanInput":
        try:
            return cls.from_rays(doc["rays"], doc.get("d"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise DegenerateSpan(f"malformed fan JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"d": self.dimension, "rays": [list(r) for r in self.rays]}


def builtin_fan(name: str) -> FanInput:
    key = _ALIASES.get(name, name)
    if name not in BUILTIN_FANS:
        raise UnknownName(f"unknown fan {name!r}; choose from {', '.join(BUILTIN_FANS)}")
    text = resources.files("conifold").joinpath("fans", f"{key}.json").read_text()
    return FanInput.from_json(json.loads(text))


def load_fan(path) -> FanInput:
    with open(path) as f:
        return FanInput.from_json(json.load(f))


def projective_space_fan(d: int) -> FanInput:
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays.append(tuple([-1] * d))
    return FanInput.from_rays(rays)


def potential_from_fan(fan: FanInput) -> LaurentPolynomial:
    # re-run the checks: FanInput can be constructed directly
    fan = FanInput.from_rays(fan.rays, fan.dimension)
    return LaurentPolynomial(fan.dimension, {r: 1 for r in fan.rays})


@dataclass
class ToricReport:
    conifold: ConifoldReport
    T: float
    dimension: int
    ray_count: int
    upper_bound: int
    lower_bound_conjecture: float
    upper_ok: bool
    lower_ok: bool
    rays_sum_to_zero: bool

    @property
    def b2(self) -> int:
        return self.ray_count - self.dimension

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "dimension": self.dimension,
            "ray_count": self.ray_count,
            "b2": self.b2,
            "upper_bound": self.upper_bound,
            "lower_bound_conjecture": self.lower_bound_conjecture,
            "upper_ok": self.upper_ok,
            "lower_ok": self.lower_ok,
            "rays_sum_to_zero": self.rays_sum_to_zero,
            "note": "b2 = ray_count - d assumes a smooth complete fan; not verified",
            "conifold": self.conifold.to_json(),
        }


def toric_report(fan: FanInput, opts: SolverOptions | None = None) -> ToricReport:
    W = potential_from_fan(fan)
    validation = validate_support(W)
    if not validation.origin_interior:
        raise HypothesisViolated(
            "origin is not strictly inside the convex hull of the rays", validation
        )
    conifold = find_conifold_point(W, opts, validation=validation)
    T = conifold.critical_value
    r = len(fan.rays)
    d = fan.dimension
    return ToricReport(
        conifold=conifold,
        T=T,
        dimension=d,
        ray_count=r,
        upper_bound=r,
        lower_bound_conjecture=float(d + 1),
        upper_ok=T <= r + BOUND_SLACK,
        lower_ok=T >= d + 1 - BOUND_SLACK,
        rays_sum_to_zero=not any(sum(v[i] for v in fan.rays) for i in range(d)),
    )
