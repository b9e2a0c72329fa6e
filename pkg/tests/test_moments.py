import itertools
import math
from fractions import Fraction

import pytest

from conifold.errors import InsufficientData, TermBudgetExceeded
from conifold.laurent import parse_polynomial, substitute_monomial
from conifold.moments import (
    MomentSequence,
    dk_report,
    growth_estimate,
    moment_sequence,
    moments_csv,
    period_ratios,
)
from conifold.solver import find_conifold_point

from .corpus import ORBIFOLD, VALID_CORPUS


def brute_force_moment(W, k):
    """Constant term of W^k by summing multinomials over all compositions of k."""
    exps = W.exponents
    coefs = [W.terms[e] for e in exps]
    total = Fraction(0)
    for counts in itertools.product(range(k + 1), repeat=len(exps) - 1):
        last = k - sum(counts)
        if last < 0:
            continue
        counts = counts + (last,)
        if any(sum(c * e[i] for c, e in zip(counts, exps)) for i in range(W.dimension)):
            continue
        multinomial = math.factorial(k)
        for c in counts:
            multinomial //= math.factorial(c)
        total += multinomial * math.prod(a**c for a, c in zip(coefs, counts))
    return total


def test_examples():
    assert moment_sequence(parse_polynomial("x1 + x1^-1"), 4).values == (1, 0, 2, 0, 6)
    assert moment_sequence(parse_polynomial("x1 + x2 + x1^-1*x2^-1"), 3).values == (1, 0, 0, 6)
    assert moment_sequence(parse_polynomial("1 + x1 + x1^-1"), 1).values == (1, 1)


@pytest.mark.parametrize("name", list(VALID_CORPUS))
def test_against_brute_force(name):
    W = parse_polynomial(VALID_CORPUS[name])
    kmax = 9 if len(W) <= 4 else 6
    seq = moment_sequence(W, kmax)
    assert list(seq.values) == [brute_force_moment(W, k) for k in range(kmax + 1)]


@pytest.mark.parametrize("name", list(VALID_CORPUS))
def test_pruning_is_exact(name):
    W = parse_polynomial(VALID_CORPUS[name])
    kmax = 40 if W.dimension < 3 else 12
    assert moment_sequence(W, kmax).values == moment_sequence(W, kmax, prune=False).values


def test_central_binomials():
    seq = moment_sequence(parse_polynomial("x1 + x1^-1"), 200)
    for k in range(0, 201):
        expected = math.comb(k, k // 2) if k % 2 == 0 else 0
        assert seq.values[k] == expected


def test_rational_coefficients_exact():
    W = parse_polynomial("1/2*x1 + 3*x1^-1")
    seq = moment_sequence(W, 10)
    for m in range(6):
        assert seq.values[2 * m] == math.comb(2 * m, m) * Fraction(3, 2) ** m


def test_invariants(corpus):
    for W in corpus.values():
        seq = moment_sequence(W, 12 if W.dimension < 3 else 8)
        assert seq.values[0] == 1
        assert all(v >= 0 for v in seq.values)
        K = seq.period
        assert all(j * K in seq.support for j in range(1, seq.kmax // K + 1))


def test_upper_bound_by_conifold_value(corpus):
    for name, W in corpus.items():
        T = find_conifold_point(W).critical_value
        seq = moment_sequence(W, 60 if W.dimension < 3 else 15)
        for k, v in enumerate(seq.values):
            if v:
                log_m = math.log(v.numerator) - math.log(v.denominator)
                assert log_m <= k * math.log(T) + math.log1p(1e-9), (name, k)


@pytest.mark.parametrize("M", [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]]])
@pytest.mark.parametrize("text", [VALID_CORPUS["P2"], ORBIFOLD, VALID_CORPUS["rational2d"]])
def test_unimodular_invariance(text, M):
    W = parse_polynomial(text)
    assert moment_sequence(substitute_monomial(W, M), 20).values == moment_sequence(W, 20).values


def test_invalid_support_has_no_period():
    seq = moment_sequence(parse_polynomial("x1 + x2 + x1^-1"), 6)
    assert seq.period is None
    # origin on an edge: moments still grow, x1 * x1^-1 pairs up
    assert seq.values == (1, 0, 2, 0, 6, 0, 20)


def test_term_budget():
    with pytest.raises(TermBudgetExceeded):
        moment_sequence(parse_polynomial("x1 + x2 + x3 + x1^-1*x2^-1*x3^-1"), 1000)
    with pytest.raises(TermBudgetExceeded):
        moment_sequence(parse_polynomial("x1 + x1^-1"), 100, term_budget=50)


def test_growth_needs_data():
    with pytest.raises(InsufficientData):
        growth_estimate(moment_sequence(parse_polynomial("x1 + x1^-1"), 10))


def test_growth_fallback_without_period():
    values = tuple(Fraction(2**k) for k in range(12))
    seq = MomentSequence(kmax=11, values=values, period=None, support=frozenset(range(12)))
    assert growth_estimate(seq) == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize(
    "text, kmax, T",
    [("x1 + x1^-1", 200, 2.0), ("x1 + x2 + x1^-1*x2^-1", 300, 3.0), ("1 + x1 + x1^-1", 200, 3.0)],
)
def test_growth_examples(text, kmax, T):
    est = growth_estimate(moment_sequence(parse_polynomial(text), kmax))
    assert abs(est - T) / T <= 0.02


def test_dk_report_p1():
    r = dk_report(parse_polynomial("x1 + x1^-1"), 200)
    assert r.T == 2.0 and r.R == 0.5
    assert r.relative_gap <= 0.02


# rational2d and skew2d are left out: other critical values of comparable
# modulus make their ratios oscillate before settling at this kmax
@pytest.mark.parametrize("name", ["P1", "P1_const", "P1_skew", "cubic", "P2", "orbifold", "dP7", "P1xP1"])
def test_period_ratios_increase(name):
    W = parse_polynomial(VALID_CORPUS[name])
    seq = moment_sequence(W, 150 if W.dimension == 1 else 120)
    T = find_conifold_point(W).critical_value
    ratios = [r for _, r in period_ratios(seq)][-10:]
    assert len(ratios) == 10
    assert all(b >= a * (1 - 1e-9) for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] <= T**seq.period * (1 + 1e-9)


def test_csv():
    text = moments_csv(moment_sequence(parse_polynomial("1/2*x1 + x1^-1"), 4))
    assert text == "k,M_k\n0,1\n1,0\n2,1\n3,0\n4,3/2\n"
