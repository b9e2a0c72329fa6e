"""Sparse Laurent polynomials with positive rational coefficients.

A polynomial ``W = sum_n a_n x^n`` is stored as a map from integer exponent
vectors to exact :class:`~fractions.Fraction` coefficients. Numerical work
happens in logarithmic coordinates ``x_i = exp(u_i)``, where

    W(u)       = sum_n a_n exp(<u, n>)
    dW/du_i    = sum_n n_i a_n exp(<u, n>)
    d2W/du_iuj = sum_n n_i n_j a_n exp(<u, n>)
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    NegativeCoefficient,
    NotUnimodular,
    OverflowRisk,
    PolynomialSyntaxError,
)
from .exact import integer_determinant

# exp(709.78) is the binary64 ceiling
OVERFLOW_EXPONENT = 700.0

Exponent = tuple  # tuple[int, ...]


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial with strictly positive coefficients."""

    __slots__ = ("dimension", "_terms", "_exponents", "_coefficients")

    def __init__(self, dimension: int, terms: Mapping[Sequence[int], object]):
        if int(dimension) < 1:
            raise ValueError("dimension must be at least 1")
        dimension = int(dimension)
        merged: dict[Exponent, Fraction] = {}
        for exp, coef in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dimension:
                raise ValueError(
                    f"exponent {exp} has length {len(exp)}, expected {dimension}"
                )
            merged[exp] = merged.get(exp, Fraction(0)) + _to_fraction(coef)
        if not merged:
            raise ValueError("a Laurent polynomial needs at least one term")
        for exp, coef in merged.items():
            if coef <= 0:
                raise NegativeCoefficient(
                    f"coefficient of {_monomial_text(exp) or '1'} is {coef}, must be > 0"
                )
        ordered = dict(sorted(merged.items()))
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "_terms", MappingProxyType(ordered))
        exps = np.array(list(ordered.keys()), dtype=float).reshape(len(ordered), dimension)
        coefs = np.array([float(c) for c in ordered.values()])
        exps.setflags(write=False)
        coefs.setflags(write=False)
        object.__setattr__(self, "_exponents", exps)
        object.__setattr__(self, "_coefficients", coefs)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    @property
    def exponents(self) -> list[Exponent]:
        return list(self._terms.keys())

    @property
    def exponent_matrix(self) -> np.ndarray:
        """Read-only ``(num_terms, d)`` float array of exponent vectors."""
        return self._exponents

    @property
    def float_coefficients(self) -> np.ndarray:
        return self._coefficients

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.dimension == other.dimension and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self.dimension, tuple(self._terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial(d={self.dimension}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def scaled(self, factor) -> "LaurentPolynomial":
        factor = _to_fraction(factor)
        return LaurentPolynomial(self.dimension, {e: c * factor for e, c in self._terms.items()})

    def twisted(self, shift: Sequence[float]) -> "LaurentPolynomial":
        """Replace each ``a_n`` by ``a_n * exp(<shift, n>)`` (rounded to binary64, then exact)."""
        shift = np.asarray(shift, dtype=float)
        return LaurentPolynomial(
            self.dimension,
            {
                e: c * Fraction(math.exp(float(np.dot(shift, e))))
                for e, c in self._terms.items()
            },
        )


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    return Fraction(value)


# ---------------------------------------------------------------------------
# log-coordinate calculus


def as_log_point(u, dimension: int) -> np.ndarray:
    u = np.array(u, dtype=float).reshape(-1)
    if u.shape != (dimension,):
        raise ValueError(f"log point has length {u.size}, expected {dimension}")
    if not np.all(np.isfinite(u)):
        raise ValueError("log point has non-finite entries")
    return u


def log_weights(W: LaurentPolynomial, u) -> np.ndarray:
    """Per-term values ``a_n exp(<u, n>)``, guarded against overflow."""
    u = as_log_point(u, W.dimension)
    pairings = W.exponent_matrix @ u
    worst = float(pairings.max())
    if worst > OVERFLOW_EXPONENT:
        raise OverflowRisk(f"<u, n> = {worst:.6g} exceeds {OVERFLOW_EXPONENT}")
    return W.float_coefficients * np.exp(pairings)


def evaluate_log(W: LaurentPolynomial, u) -> float:
    return float(log_weights(W, u).sum())


def gradient_log(W: LaurentPolynomial, u) -> np.ndarray:
    return W.exponent_matrix.T @ log_weights(W, u)


def hessian_log(W: LaurentPolynomial, u) -> np.ndarray:
    weights = log_weights(W, u)
    E = W.exponent_matrix
    H = (E * weights[:, None]).T @ E
    # symmetric bit for bit
    return 0.5 * (H + H.T)


def substitute_monomial(W: LaurentPolynomial, M) -> LaurentPolynomial:
    """Apply the torus automorphism ``x^n -> x^(M n)`` for unimodular integer ``M``."""
    M = [[int(v) for v in row] for row in M]
    d = W.dimension
    if len(M) != d or any(len(row) != d for row in M):
        raise NotUnimodular(f"matrix must be {d}x{d}")
    det = integer_determinant(M)
    if abs(det) != 1:
        raise NotUnimodular(f"determinant is {det}, expected +-1")
    terms = {}
    for exp, coef in W.terms.items():
        image = tuple(sum(M[i][j] * exp[j] for j in range(d)) for i in range(d))
        terms[image] = coef
    return LaurentPolynomial(d, terms)


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+\.\d*|\.\d+|\d+)"
    r"|(?P<var>x(?P<idx>\d+))"
    r"|(?P<op>[-+*/^])"
    r")"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), pos))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), pos))
        else:
            tokens.append((m.group("op"), m.group("op"), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind=None):
        if self.i >= len(self.tokens):
            raise PolynomialSyntaxError("unexpected end of input")
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind!r} at {tok[2]}, got {tok[1]!r}")
        self.i += 1
        return tok

    def polynomial(self):
        terms = [self.term()]
        while self.peek() in ("+", "-"):
            if self.peek() == "+":
                self.take()
            terms.append(self.term())
        if self.peek() is not None:
            tok = self.tokens[self.i]
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r} at {tok[2]}")
        return terms

    def term(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        coef = Fraction(1)
        powers: dict[int, int] = {}
        if self.peek() == "num":
            coef = self.coeff()
        elif self.peek() == "var":
            self.factor(powers)
        else:
            raise PolynomialSyntaxError("expected a coefficient or a variable")
        while self.peek() == "*":
            self.take()
            self.factor(powers)
        return sign * coef, powers

    def coeff(self):
        text = self.take("num")[1]
        value = Fraction(text)
        if self.peek() == "/":
            if "." in text:
                raise PolynomialSyntaxError("a fraction needs integer numerator")
            self.take()
            den = self.take("num")[1]
            if "." in den:
                raise PolynomialSyntaxError("a fraction needs integer denominator")
            if int(den) == 0:
                raise PolynomialSyntaxError("zero denominator")
            value = Fraction(int(text), int(den))
        return value

    def factor(self, powers):
        _, index, pos = self.take("var")
        if index < 1:
            raise PolynomialSyntaxError(f"variable index must be >= 1 (at {pos})")
        power = 1
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            digits = self.take("num")[1]
            if not digits.isdigit():
                raise PolynomialSyntaxError(f"exponent must be an integer, got {digits!r}")
            power = sign * int(digits)
        powers[index] = powers.get(index, 0) + power


def parse_polynomial(text: str, dimension: int | None = None) -> LaurentPolynomial:
    """Parse e.g. ``"3/2*x1 + 0.5*x1^-2"``.

    The dimension is the highest variable index unless given explicitly.
    Equal monomials are merged; a merged coefficient ``<= 0`` raises
    :class:`NegativeCoefficient`.
    """
    if not text or not text.strip():
        raise PolynomialSyntaxError("empty polynomial")
    raw = _Parser(text).polynomial()
    highest = max((max(p) for _, p in raw if p), default=0)
    if dimension is None:
        dimension = highest
        if dimension < 1:
            raise PolynomialSyntaxError("no variables: cannot infer the dimension")
    elif highest > dimension:
        raise PolynomialSyntaxError(f"x{highest} exceeds declared dimension {dimension}")
    terms: dict[Exponent, Fraction] = {}
    for coef, powers in raw:
        exp = tuple(powers.get(i + 1, 0) for i in range(dimension))
        terms[exp] = terms.get(exp, Fraction(0)) + coef
    return LaurentPolynomial(dimension, terms)


def _monomial_text(exp) -> str:
    return "*".join(f"x{i + 1}^{e}" if e != 1 else f"x{i + 1}" for i, e in enumerate(exp) if e)


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(W: LaurentPolynomial) -> str:
    """Canonical text form; parses back to an identical polynomial."""
    parts = []
    for exp, coef in W.terms.items():
        mono = _monomial_text(exp)
        if coef == 1 and mono:
            parts.append(mono)
        elif mono:
            parts.append(f"{_coef_text(coef)}*{mono}")
        else:
            parts.append(_coef_text(coef))
    if not any(exp[-1] for exp in W.terms):
        # pin the dimension when the last variable never appears
        parts[0] += f"*x{W.dimension}^0"
    return " + ".join(parts)


def to_json(W: LaurentPolynomial) -> dict:
    return {
        "d": W.dimension,
        "terms": [{"e": list(e), "c": _coef_text(c)} for e, c in W.terms.items()],
    }


def from_json(doc: Mapping) -> LaurentPolynomial:
    try:
        d = int(doc["d"])
        terms: dict[Exponent, Fraction] = {}
        for t in doc["terms"]:
            e = tuple(int(v) for v in t["e"])
            c = t["c"]
            c = Fraction(c) if isinstance(c, (str, int)) else Fraction(str(c))
            terms[e] = terms.get(e, Fraction(0)) + c
    except (KeyError, TypeError, ValueError) as exc:
        raise PolynomialSyntaxError(f"malformed polynomial JSON: {exc}") from exc
    return LaurentPolynomial(d, terms)


def from_terms(terms: Iterable[tuple[Sequence[int], object]]) -> LaurentPolynomial:
    """Convenience constructor from ``(exponent, coefficient)`` pairs."""
    terms = list(terms)
    merged: dict[Exponent, Fraction] = {}
    for e, c in terms:
        e = tuple(e)
        merged[e] = merged.get(e, Fraction(0)) + _to_fraction(c)
    return LaurentPolynomial(len(terms[0][0]), merged)
