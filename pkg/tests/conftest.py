import random
from fractions import Fraction

import pytest

from unipade.gaussian import GaussianRational
from unipade.poly import EXACT, Polynomial
from unipade.rational import RationalFunction

# filled by tests/test_acceptance.py, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


def rand_gr(rng: random.Random, span: int = 9, den: int = 9) -> GaussianRational:
    return GaussianRational.from_parts(Fraction(rng.randint(-span, span), rng.randint(1, den)),
                                       Fraction(rng.randint(-span, span), rng.randint(1, den)))


def rand_poly(rng: random.Random, degree: int, monic: bool = False) -> Polynomial:
    cs = [rand_gr(rng) for _ in range(degree)]
    lead = GaussianRational.from_parts(1) if monic else rand_gr(rng)
    while not lead:
        lead = rand_gr(rng)
    return Polynomial(tuple(cs) + (lead,), EXACT)


def rand_rational(rng: random.Random, max_deg: int = 6) -> RationalFunction:
    """Random reduced rational function with numerator degree k and
    denominator degree lambda (both <= max_deg) exactly as drawn."""
    while True:
        k, lam = rng.randint(0, max_deg), rng.randint(0, max_deg)
        R = RationalFunction(rand_poly(rng, k), rand_poly(rng, lam, monic=True))
        if R.num.degree == k and R.den.degree == lam:
            return R


@pytest.fixture
def rng():
    return random.Random(20261015)
