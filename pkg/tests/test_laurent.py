import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conifold.errors import NegativeCoefficient, NotUnimodular, OverflowRisk, PolynomialSyntaxError
from conifold.laurent import (
    LaurentPolynomial,
    evaluate_log,
    from_json,
    gradient_log,
    hessian_log,
    parse_polynomial,
    substitute_monomial,
    to_json,
    to_text,
)

from .corpus import ORBIFOLD, VALID_CORPUS

F = Fraction


def terms(W):
    return dict(W.terms)


class TestParse:
    def test_simple(self):
        W = parse_polynomial("x1 + x1^-1")
        assert W.dimension == 1
        assert terms(W) == {(1,): 1, (-1,): 1}

    def test_orbifold(self):
        W = parse_polynomial(ORBIFOLD)
        assert W.dimension == 2
        assert terms(W) == {(2, -1): 1, (-1, 2): 1, (-1, -1): 1}

    def test_rational_and_decimal(self):
        W = parse_polynomial("3/2*x1 + 0.5*x1^-2")
        assert terms(W) == {(1,): F(3, 2), (-2,): F(1, 2)}
        assert all(isinstance(c, Fraction) for c in W.terms.values())

    def test_negative_rejected(self):
        with pytest.raises(NegativeCoefficient):
            parse_polynomial("x1 - x2")

    @pytest.mark.parametrize("text", ["-3*x1 + x1^-1", "x1 + -2*x1^-1", "0*x1 + x1^-1", "x1 - x1 + x1^-1"])
    def test_nonpositive_after_merge(self, text):
        with pytest.raises(NegativeCoefficient):
            parse_polynomial(text)

    def test_merge_to_positive_is_fine(self):
        W = parse_polynomial("2*x1 - x1 + x1^-1")
        assert terms(W) == {(1,): 1, (-1,): 1}

    def test_merging(self):
        W = parse_polynomial("x1*x2 + x2*x1 + x1^2*x1^-1*x2")
        assert terms(W) == {(1, 1): 3}

    def test_whitespace_and_constant(self):
        W = parse_polynomial("  1 +x1 +   x1 ^ -1 ")
        assert terms(W) == {(0,): 1, (1,): 1, (-1,): 1}

    def test_explicit_dimension(self):
        W = parse_polynomial("x1 + x1^-1", dimension=3)
        assert W.dimension == 3
        assert terms(W) == {(1, 0, 0): 1, (-1, 0, 0): 1}

    @pytest.mark.parametrize(
        "text",
        ["", "x1 +", "x0 + x1", "x1^", "x1^1.5", "2 3*x1", "y1", "x1 ** 2", "1/0*x1", "3", "x1^-x2", "1.5/2*x1"],
    )
    def test_syntax_errors(self, text):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(text)

    @pytest.mark.parametrize("text", list(VALID_CORPUS.values()) + ["x1^-1 + x3", "5/7 + x2^-4"])
    def test_round_trip(self, text):
        W = parse_polynomial(text)
        again = parse_polynomial(to_text(W))
        assert again == W
        assert again.dimension == W.dimension
        assert from_json(to_json(W)) == W

    def test_invariants(self):
        with pytest.raises(ValueError):
            LaurentPolynomial(0, {(): 1})
        with pytest.raises(ValueError):
            LaurentPolynomial(2, {(1,): 1})
        with pytest.raises(NegativeCoefficient):
            LaurentPolynomial(1, {(1,): -1, (-1,): 1})

    def test_immutable(self):
        W = parse_polynomial("x1 + x1^-1")
        with pytest.raises(AttributeError):
            W.dimension = 3
        with pytest.raises(TypeError):
            W.terms[(2,)] = 1


exponent = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
coefficient = st.fractions(min_value=F(1, 50), max_value=100, max_denominator=50)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(exponent, coefficient, min_size=1, max_size=8))
def test_round_trip_property(raw):
    W = LaurentPolynomial(2, raw)
    assert dict(parse_polynomial(to_text(W)).terms) == dict(W.terms)


class TestCalculus:
    def test_evaluate_examples(self):
        W = parse_polynomial("x1 + x1^-1")
        assert evaluate_log(W, [0.0]) == 2.0
        assert evaluate_log(W, [math.log(2)]) == pytest.approx(2.5, rel=1e-15)
        assert evaluate_log(parse_polynomial("x1 + x2 + x1^-1*x2^-1"), [0, 0]) == 3.0

    def test_gradient_examples(self):
        assert gradient_log(parse_polynomial("x1 + x1^-1"), [0]).tolist() == [0.0]
        assert gradient_log(parse_polynomial("2*x1 + x1^-1"), [0]).tolist() == [1.0]
        assert gradient_log(parse_polynomial(ORBIFOLD), [0, 0]).tolist() == [0.0, 0.0]

    def test_hessian_examples(self):
        assert hessian_log(parse_polynomial("x1 + x1^-1"), [0]).tolist() == [[2.0]]
        H = hessian_log(parse_polynomial("x1 + x2 + x1^-1*x2^-1"), [0, 0])
        assert H.tolist() == [[2.0, 1.0], [1.0, 2.0]]
        assert hessian_log(parse_polynomial("2*x1 + x1^-1"), [0]).tolist() == [[3.0]]

    def test_hessian_exactly_symmetric(self, corpus, rng):
        for W in corpus.values():
            for _ in range(10):
                H = hessian_log(W, rng.uniform(-5, 5, W.dimension))
                assert np.array_equal(H, H.T)

    def test_overflow_guard(self):
        W = parse_polynomial("x1 + x1^-1")
        assert math.isfinite(evaluate_log(W, [700.0]))
        for fn in (evaluate_log, gradient_log, hessian_log):
            with pytest.raises(OverflowRisk):
                fn(W, [700.5])
            with pytest.raises(OverflowRisk):
                fn(W, [-701])

    def test_bad_points(self):
        W = parse_polynomial("x1 + x1^-1")
        with pytest.raises(ValueError):
            evaluate_log(W, [0.0, 1.0])
        with pytest.raises(ValueError):
            evaluate_log(W, [float("nan")])

    def test_positivity(self, corpus, rng):
        for W in corpus.values():
            for _ in range(100):
                assert evaluate_log(W, rng.uniform(-5, 5, W.dimension)) > 0

    def test_against_direct_sum(self, corpus, rng):
        # independent evaluation in multiplicative coordinates with math.fsum
        for W in corpus.values():
            u = rng.uniform(-2, 2, W.dimension)
            x = np.exp(u)
            direct = math.fsum(
                float(c) * math.prod(xi**ei for xi, ei in zip(x, e)) for e, c in W.terms.items()
            )
            assert evaluate_log(W, u) == pytest.approx(direct, rel=1e-13)


class TestSubstitution:
    def test_identity(self):
        W = parse_polynomial("x1 + x1^-1")
        assert substitute_monomial(W, [[1]]) == W

    def test_flip(self):
        W = parse_polynomial("x1 + x1^-1")
        assert substitute_monomial(W, [[-1]]) == W

    def test_shear(self):
        W = parse_polynomial("x1 + x2 + x1^-1*x2^-1")
        expected = parse_polynomial("x1 + x1*x2 + x1^-2*x2^-1")
        assert substitute_monomial(W, [[1, 1], [0, 1]]) == expected

    @pytest.mark.parametrize("M", [[[2]], [[1, 1], [1, 1]], [[2, 1], [1, 2]], [[1, 0]]])
    def test_not_unimodular(self, M):
        W = parse_polynomial("x1 + x1^-1") if len(M) == 1 else parse_polynomial("x1 + x2")
        with pytest.raises(NotUnimodular):
            substitute_monomial(W, M)
