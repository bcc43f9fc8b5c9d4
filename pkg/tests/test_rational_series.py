import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import rand_gr, rand_rational
from unipade.compacta import CompactSample, GridSpec
from unipade.errors import PreconditionError
from unipade.gaussian import GaussianRational
from unipade.poly import EXACT, FLOAT, Polynomial
from unipade.rational import RationalFunction, is_infinite, principal_parts, rat_derivative, rat_normalize
from unipade.series import TaylorJet, jet_of_rational, partial_sum


def G(re, im=0):
    return GaussianRational.from_parts(Fraction(re), Fraction(im))


def P(*cs):
    return Polynomial(tuple(G(c) if not isinstance(c, GaussianRational) else c for c in cs), EXACT)


def segment(a, b, h=1 / 16):
    grid = GridSpec(a - 1, b + 1, -1, 1, h)
    Z = grid.nodes()
    return CompactSample.from_mask(grid, (Z.imag == 0) & (Z.real >= a) & (Z.real <= b), "seg")


def test_normalize_examples():
    R = rat_normalize(P(-1, 0, 1), P(-1, 1))
    assert R.num == P(1, 1) and R.den == P(1)
    R = rat_normalize(P(0, 2), P(2))
    assert R.num == P(0, 1) and R.den == P(1)


def test_normalize_random_coprime_pairs_idempotent():
    rng = random.Random(7)
    for _ in range(30):
        R = rand_rational(rng, 4)
        again = RationalFunction(R.num, R.den)
        assert again.num == R.num and again.den == R.den
        assert R.den.leading == G(1)


def test_evaluation_invariant_under_scaling():
    rng = random.Random(8)
    for _ in range(20):
        R = rand_rational(rng, 4)
        c = rand_gr(rng) or G(3)
        z = rand_gr(rng)
        if not R.den(z):
            continue
        assert R.num(z) / R.den(z) == (R.num.scale(c))(z) / (R.den.scale(c))(z)


def test_derivative_examples():
    assert rat_derivative(RationalFunction(P(0, 0, 1)), 1) == RationalFunction(P(0, 2))
    R = RationalFunction(P(1), P(1, -1))
    assert rat_derivative(R, 2) == RationalFunction(P(2), P(1, -1) ** 3)


def test_derivative_matches_central_difference():
    rng = random.Random(9)
    nrng = np.random.default_rng(9)
    R = rand_rational(rng, 4).to_float()
    d1 = rat_derivative(R, 1)
    h = 1e-5
    poles = np.roots(np.array(R.den.coeffs[::-1], dtype=complex))
    for z in nrng.uniform(-1, 1, 20) + 1j * nrng.uniform(-1, 1, 20):
        if len(poles) and np.min(np.abs(z - poles)) < 0.1:
            continue
        fd = (R(z + h) - R(z - h)) / (2 * h)
        assert abs(d1(z) - fd) <= 1e-6 * max(1.0, abs(fd))


def test_evaluation_at_pole_is_infinite():
    R = RationalFunction(P(1), P(-1, 1))
    assert is_infinite(R(G(1)))
    assert R(G(2)) == G(1)
    vals = R.to_float().eval_array(np.array([1.0, 3.0]))
    assert np.isinf(vals[0]) and vals[1] == 0.5


def test_principal_parts_examples():
    K = segment(-0.5, 0.5)
    R = RationalFunction(P(1, 1), P(0, 1))  # 1/z + 1
    assert principal_parts(R, K) == RationalFunction(P(1), P(0, 1))
    far = RationalFunction(P(1), P(-10, 1))
    assert principal_parts(far, K) == RationalFunction.zero(EXACT)


def test_principal_parts_residue_matches_limit_oracle():
    K = segment(1.5, 2.5)
    R = RationalFunction(P(1), P(-2, 1) * P(-5, 1))
    mu = principal_parts(R, K)
    # residue at 2 by limit: (z-2) R(z) as z -> 2
    z = 2 + 1e-9
    residue = (z - 2) * complex(R.to_float()(z))
    assert abs(complex(mu.num.coeffs[0]) / complex(mu.den.leading) - residue) < 1e-8
    assert mu == RationalFunction(P(Fraction(-1, 3)), P(-2, 1))
    # R - mu stays bounded on a fine sample of the region
    rest = (R - mu).to_float()
    fine = np.linspace(1.5, 2.5, 1001)
    assert np.max(np.abs(rest.eval_array(fine))) < 1.0


def test_principal_parts_ambiguous_pole_rejected():
    K = segment(0.0, 1.0)
    R = RationalFunction(P(1), P(Fraction(-33, 32) - Fraction(1, 1024), 1))
    with pytest.raises(PreconditionError):
        principal_parts(R, K, tau_inclusion=1 / 32 + 1 / 1024)


def test_jet_examples():
    R = RationalFunction(P(1), P(1, -1))
    assert jet_of_rational(R, G(0), 3).coeffs == (G(1),) * 4
    Z = RationalFunction(P(0, 1))
    assert jet_of_rational(Z, G(1), 2).coeffs == (G(1), G(1), G(0))


def test_jet_matches_derivative_oracle():
    rng = random.Random(10)
    for _ in range(10):
        R = rand_rational(rng, 3)
        zeta = rand_gr(rng, 2, 2)
        if not R.den(zeta):
            continue
        jet = jet_of_rational(R, zeta, 6)
        for n in range(7):
            assert jet.a(n) == rat_derivative(R, n)(zeta) / math.factorial(n)


def test_jet_linearity_and_shift():
    rng = random.Random(11)
    R1, R2 = rand_rational(rng, 3), rand_rational(rng, 3)
    alpha, zeta = rand_gr(rng), rand_gr(rng, 2, 2)
    if R1.den(zeta) and R2.den(zeta):
        lhs = jet_of_rational(RationalFunction.from_poly(Polynomial.const(alpha, EXACT)) * R1 + R2, zeta, 5)
        j1, j2 = jet_of_rational(R1, zeta, 5), jet_of_rational(R2, zeta, 5)
        assert lhs.coeffs == tuple(alpha * a + b for a, b in zip(j1.coeffs, j2.coeffs))
    # jet at zeta of R equals the jet at 0 of R(z + zeta)
    R = rand_rational(rng, 3)
    zeta = G(Fraction(1, 3), Fraction(-1, 2))
    shifted = RationalFunction(R.num.shift(zeta), R.den.shift(zeta))
    assert jet_of_rational(R, zeta, 5).coeffs == jet_of_rational(shifted, G(0), 5).coeffs


def test_partial_sum_examples():
    jet = jet_of_rational(RationalFunction(P(1), P(1, -1)), G(0), 4)
    assert partial_sum(jet, -3).is_zero()
    assert partial_sum(jet, 2) == P(1, 1, 1)
    assert partial_sum(TaylorJet(G(0), (G(5),), EXACT), 0) == P(5)


def test_partial_sum_recenters():
    jet = TaylorJet(G(1), (G(2), G(3)), EXACT)  # 2 + 3(z-1)
    assert partial_sum(jet, 1) == P(-1, 3)


def test_float_jet_of_float_rational():
    R = RationalFunction(Polynomial((1.0,), FLOAT), Polynomial((1.0, -1.0), FLOAT))
    jet = jet_of_rational(R, 0.5, 4)
    assert np.allclose(jet.coeffs, [2.0 ** (n + 1) for n in range(5)])
