import numpy as np
import pytest

from conifold.laurent import parse_polynomial

from .corpus import VALID_CORPUS


@pytest.fixture(scope="session")
def corpus():
    return {name: parse_polynomial(text) for name, text in VALID_CORPUS.items()}


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


CRITERIA = {
    "test_c1_golden_values": "C1 golden values (P^d, 2x+1/x, orbifold)",
    "test_c2_uniqueness": "C2 uniqueness from 100 random starts",
    "test_c3_convexity": "C3 convexity (Cholesky, PSD quadratic forms)",
    "test_c4_calculus": "C4 gradient/Hessian vs finite differences",
    "test_c5_equivariance": "C5 unimodular / scaling / twist equivariance",
    "test_c6_hypothesis_gate": "C6 hypothesis gate and randomized supports",
    "test_c7_moments": "C7 exact moments and growth-rate gap",
    "test_c8_toric_bounds": "C8 toric upper bound and conjectured lower bound",
    "test_c9_cli": "C9 CLI exit codes and byte-stable JSON",
}
_acceptance_outcomes = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name in CRITERIA:
        if report.when == "call" or report.outcome != "passed":
            prev = _acceptance_outcomes.get(name, "PASS")
            _acceptance_outcomes[name] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in _acceptance_outcomes:
            terminalreporter.write_line(f"{_acceptance_outcomes[name]:4}  {label}")
