import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from unipade.chordal import chi, chi_array, rationalize, sup_chordal
from unipade.errors import PreconditionError
from unipade.gaussian import GaussianRational
from unipade.poly import EXACT, FLOAT, Polynomial
from unipade.rational import INF, RationalFunction

finite = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)
extended = st.one_of(finite, st.just(INF))


def test_chi_examples():
    assert chi(2 + 1j, 2 + 1j) == 0
    assert chi(0, INF) == 1.0
    assert chi(INF, INF) == 0.0
    assert chi(1, -1) == pytest.approx(1.0, abs=1e-15)


@given(extended, extended)
def test_chi_symmetric_and_bounded(a, b):
    assert chi(a, b) == pytest.approx(chi(b, a), abs=1e-12)
    assert 0 <= chi(a, b) <= 1 + 1e-12


@given(finite, finite)
def test_chi_dominated_by_euclidean(a, b):
    assert chi(a, b) <= abs(a - b) + 1e-12


@given(extended, extended, extended)
def test_chi_triangle(a, b, c):
    assert chi(a, c) <= chi(a, b) + chi(b, c) + 1e-12


def test_chi_array_agrees_with_scalar():
    a = np.array([0, 1j, complex(math.inf, 0), 3 - 4j])
    b = np.array([complex(math.inf, 0), -1j, complex(math.inf, 0), 0])
    assert np.allclose(chi_array(a, b), [chi(x, y) for x, y in zip(a, b)])


def test_sup_chordal_examples():
    z = RationalFunction(Polynomial((0.0, 1.0), FLOAT))
    assert sup_chordal(z, z, np.array([0.0, 1.0, 2j])) == 0
    inv = RationalFunction(Polynomial((1.0,), FLOAT), Polynomial((0.0, 1.0), FLOAT))
    assert sup_chordal(inv, lambda z: INF, np.array([0.0])) == 0


def test_sup_chordal_against_finer_grid():
    F = lambda pts: pts
    G = lambda pts: pts + 0.1
    coarse = np.exp(2j * np.pi * np.arange(64) / 64)
    fine = np.exp(2j * np.pi * np.arange(640) / 640)
    # chi(z, z + 0.1) on |z| = 1 is 0.1 / (sqrt 2 * sqrt(1 + |z + 0.1|^2)); maximum at z = -1
    assert sup_chordal(F, G, coarse) == pytest.approx(sup_chordal(F, G, fine), rel=1e-3)
    assert sup_chordal(F, G, coarse) <= sup_chordal(F, G, np.concatenate([coarse, fine]))


def test_rationalize_examples():
    disk = np.array([r * np.exp(1j * t) for r in (0.25, 0.5, 1.0) for t in np.linspace(0, 2 * np.pi, 16)])
    pz = RationalFunction(Polynomial((0.0, math.pi), FLOAT))
    R, k = rationalize(pz, disk, 1e-3)
    assert R.mode == EXACT
    assert sup_chordal(R.to_float(), pz, disk) < 1e-3
    const = RationalFunction(Polynomial((math.pi,), FLOAT))
    R, k = rationalize(const, disk, 1e-6)
    # chordal <= euclidean: a coefficient within 1e-6 of pi is already enough,
    # so the ladder stops no later than the euclidean rounding level 2^-20
    assert chi(complex(R.num.coeffs[0]), math.pi) < 1e-6 and k <= 20
    half = RationalFunction(Polynomial((0.5, 0.25), FLOAT))
    R, k = rationalize(half, disk, 1e-12)
    assert k <= 2 and R.num.coeffs == (GaussianRational.from_parts(0.5), GaussianRational.from_parts(0.25))


def test_rationalize_rejects_bad_eps():
    with pytest.raises(PreconditionError):
        rationalize(RationalFunction(Polynomial((1.0,), FLOAT)), np.array([0.0]), 0.0)
