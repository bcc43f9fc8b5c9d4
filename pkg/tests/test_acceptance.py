"""Acceptance criteria 1-8.

Each ``criterion_N`` returns ``(ok, summary)``; the pytest wrappers record a
one-line verdict (shown in the terminal summary) and assert.  Running this
file directly prints the same lines.
"""

import json
import math
import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from unipade import cli
from unipade.chordal import chi, chi_array
from unipade.compacta import (GridSpec, CompactSample, complement_components, complement_exhaustion,
                              exhausting_sequence, fill_holes, split_boundary_sequences)
from unipade.demos import disk_and_segment, rational_fixture
from unipade.errors import NotInDError
from unipade.gaussian import GaussianRational, from_float
from unipade.pade import (admissible_prop22, hankel_det, pade_jacobi, pade_solve, unit_disk_probes,
                          verify_prop22)
from unipade.poly import EXACT, Polynomial
from unipade.rational import INF, RationalFunction, taylor_coefficients
from unipade.regions import Annulus, Arc, Disk, HalfPlane, Intersection
from unipade.series import TaylorJet, jet_of_rational
from unipade.universal import (ConstructionProblem, IndexSetF, construct_candidate, fault_delete_pole,
                               fault_double_d, verify_certificate)

try:
    from conftest import ACCEPTANCE_LINES, rand_gr, rand_rational
except ImportError:  # run as a script from elsewhere
    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    from conftest import ACCEPTANCE_LINES, rand_gr, rand_rational

SEED = 20261015


def _record(n: int, ok: bool, summary: str, seconds: float):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {summary}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return ok


# 1 + 2: reproduction of rational functions and the Taylor-match contract -----


@lru_cache(maxsize=None)
def _prop22_sweep():
    rng = random.Random(SEED)
    exact_ok = float_ok = taylor_ok = total = 0
    worst_float = 0.0
    probes = unit_disk_probes(64)
    for _ in range(200):
        phi = rand_rational(rng, 6)
        k, lam = phi.num.degree, phi.den.degree
        zeta = _random_zeta(rng)
        while not phi.den(zeta):
            zeta = _random_zeta(rng)
        cases = [(k, lam), (k + 1 + rng.randint(0, 2), lam), (k, lam + 1 + rng.randint(0, 2))]
        phi_f = phi.to_float()
        for p, q in cases:
            assert admissible_prop22(k, lam, p, q)
            total += 1
            exact_ok += verify_prop22(phi, zeta, p, q)
            # Taylor match b_n = a_n, n <= p+q, for the approximant just built
            jet = jet_of_rational(phi, zeta, p + q)
            P = pade_jacobi(jet, p, q)
            b = taylor_coefficients(P.A, P.B, zeta, p + q)
            taylor_ok += list(b) == list(jet.coeffs)
            ok_f = verify_prop22(phi_f, complex(zeta), p, q, tau_verify=1e-9, probes=probes)
            float_ok += ok_f
            if not ok_f:
                worst_float = max(worst_float, _float_error(phi_f, complex(zeta), p, q, probes))
    return total, exact_ok, float_ok, taylor_ok, worst_float


def _random_zeta(rng: random.Random) -> GaussianRational:
    """Dyadic point (step 1/16) of the closed unit disk, where the probes live."""
    while True:
        z = GaussianRational.from_parts(Fraction(rng.randint(-16, 16), 16), Fraction(rng.randint(-16, 16), 16))
        if z.abs2() <= 1:
            return z


def _float_error(phi, zeta, p, q, probes):
    try:
        P = pade_jacobi(jet_of_rational(phi, zeta, p + q), p, q)
    except NotInDError:
        return math.inf
    Al, Bl = P.local
    w = probes - zeta
    with np.errstate(all="ignore"):
        return float(np.max(chi_array(Al.eval_array(w) / Bl.eval_array(w), phi.eval_array(probes))))


def criterion_1():
    t = time.perf_counter()
    total, exact_ok, float_ok, _, worst = _prop22_sweep()
    dt = time.perf_counter() - t
    ok = exact_ok == total and float_ok == total and dt < 60
    return _record(1, ok, f"exact {exact_ok}/{total}, float {float_ok}/{total} (tol 1e-9"
                          f"{'' if float_ok == total else f', worst {worst:.2e}'})", dt)


def criterion_2():
    t = time.perf_counter()
    total, _, _, taylor_ok, _ = _prop22_sweep()
    return _record(2, taylor_ok == total, f"bit-exact Taylor match {taylor_ok}/{total}",
                   time.perf_counter() - t)


# 3: Jacobi vs linear solve, Hankel vs solvability ---------------------------------


def criterion_3():
    t = time.perf_counter()
    rng = random.Random(SEED + 3)
    small = [GaussianRational.from_parts(v) for v in (-1, 0, 0, 1, 2)]
    agree = disagree_alg = disagree_dual = singular = 0
    for _ in range(500):
        p, q = rng.randint(0, 5), rng.randint(0, 5)
        # sparse small entries make singular Hankel matrices common
        coeffs = tuple(rng.choice(small) if rng.random() < 0.6 else rand_gr(rng, 3, 3)
                       for _ in range(p + q + 1))
        jet = TaylorJet(rand_gr(rng, 2, 2), coeffs, EXACT)
        in_D = hankel_det(jet, p, q).in_D
        try:
            S = pade_solve(jet, p, q)
            solvable = True
        except NotInDError:
            solvable = False
        if in_D != solvable:
            disagree_dual += 1
        if not in_D:
            singular += 1
            continue
        J = pade_jacobi(jet, p, q)
        if J.rational() == S.rational():
            agree += 1
        else:
            disagree_alg += 1
    dt = time.perf_counter() - t
    ok = disagree_alg == 0 and disagree_dual == 0
    return _record(3, ok, f"jacobi==solve on {agree}/{500 - singular} in-D jets, "
                          f"{singular} singular, duality disagreements {disagree_dual}", dt)


# 4: chordal metric axioms --------------------------------------------------------


def _random_extended(rng: np.random.Generator, n: int) -> np.ndarray:
    mag = 10.0 ** rng.uniform(-3, 3, n)
    z = mag * np.exp(2j * np.pi * rng.uniform(size=n))
    z[rng.uniform(size=n) < 0.05] = 0
    z[rng.uniform(size=n) < 0.1] = complex(math.inf, 0)
    return z


def criterion_4():
    t = time.perf_counter()
    rng = np.random.default_rng(SEED + 4)
    a, b, c = (_random_extended(rng, 10_000) for _ in range(3))
    ab, ba, bc, ac = chi_array(a, b), chi_array(b, a), chi_array(b, c), chi_array(a, c)
    aa = chi_array(a, a)
    checks = {
        "symmetry": np.all(np.abs(ab - ba) <= 1e-12),
        "bounded": np.all(ab <= 1 + 1e-12) and np.all(ab >= 0),
        "identity": np.all(aa == 0) and np.all((ab > 0) | (a == b) | (np.isinf(a) & np.isinf(b))),
        "triangle": np.all(ac <= ab + bc + 1e-12),
        "specials": chi(0, INF) == 1.0 and chi(INF, INF) == 0.0,
    }
    ok = all(bool(v) for v in checks.values())
    failed = [k for k, v in checks.items() if not v]
    return _record(4, ok, "10^4 triples: " + ("all axioms hold" if ok else f"failed {failed}"),
                   time.perf_counter() - t)


# 5: compacta invariants ------------------------------------------------------------


def _ring(grid, r):
    Z = grid.nodes()
    return CompactSample.from_mask(grid, np.abs(np.abs(Z) - r) <= grid.band, "ring")


def _single_component(K: CompactSample) -> bool:
    labels, count, frame = complement_components(K.mask(pad=1))
    return count == len(frame) == 1


def criterion_5():
    t = time.perf_counter()
    grid = GridSpec(-1.5, 1.5, -1.5, 1.5, 1 / 32)
    fixtures = {
        "disk": (Disk(0j, 1.0), _ring(grid, 0.5)),
        "punctured": (Intersection((Disk(0j, 1.0), ~Disk(0j, 0.25))), _ring(grid, 0.5)),
        "band": (Intersection((HalfPlane(-1j, 0.0), HalfPlane(1j, 1.0))),
                 CompactSample.from_mask(grid, (np.abs(grid.nodes() - 0.5j) <= 0.3), "blob")),
    }
    failures = []
    for name, (omega, K) in fixtures.items():
        Ls = exhausting_sequence(omega, grid, 4)
        sets = [L.node_set() for L in Ls]
        if not all(x <= y for x, y in zip(sets, sets[1:])):
            failures.append(f"{name}: nesting")
        F1 = fill_holes(K, omega)
        if F1.node_set() != fill_holes(F1, omega).node_set():
            failures.append(f"{name}: idempotence")
        Z = grid.nodes()
        band = omega.contains(Z, closed=True, band=grid.band) & ~omega.contains(Z, closed=False)
        bset = {(int(i), int(j)) for i, j in zip(*np.nonzero(band))}
        if F1.node_set() & bset != K.node_set() & bset:
            failures.append(f"{name}: boundary preservation")
        for Kr in complement_exhaustion(omega, grid, "off_closure", 4):
            if not Kr.is_empty() and not _single_component(Kr):
                failures.append(f"{name}: complement of {Kr.label} not connected")
    g64 = GridSpec(-1.5, 1.5, -1.5, 1.5, 1 / 64)
    Ls, Ks, _ = split_boundary_sequences(Disk(0j, 1.0), Arc(0j, 1.0, math.pi / 4, 3 * math.pi / 4),
                                         Arc(0j, 1.0, 5 * math.pi / 4, 7 * math.pi / 4), g64, 4)
    pairs = sum(1 for L in Ls for K in Ks if not (L.node_set() & K.node_set()))
    if pairs != 16:
        failures.append(f"split: {16 - pairs} intersecting pairs")
    dt = time.perf_counter() - t
    ok = not failures and dt < 30
    return _record(5, ok, f"3 region fixtures + split {pairs}/16 disjoint pairs"
                          + (f"; failures: {failures}" if failures else ""), dt)


# 6: rational-mode universal construction with fine-sample oracle -----------------


@lru_cache(maxsize=None)
def _fixture_witness():
    problem = rational_fixture()
    return problem, construct_candidate(problem)


def _mp(z):
    return mpmath.mpc(z.real, z.imag)


def _mp_scalar(c):
    if isinstance(c, GaussianRational):
        re_, im_ = c.real, c.imag
        return mpmath.mpc(mpmath.mpf(re_.numerator) / re_.denominator,
                          mpmath.mpf(im_.numerator) / im_.denominator)
    return mpmath.mpc(complex(c).real, complex(c).imag)


def _mp_poly(P, z):
    return mpmath.polyval([_mp_scalar(c) for c in reversed(P.coeffs)], z)


def _mp_rational(R, z, ell):
    f = lambda w: _mp_poly(R.num, w) / _mp_poly(R.den, w)
    return mpmath.diff(f, z, ell) if ell else f(z)


def _mp_chi(a, b):
    return abs(a - b) / (mpmath.sqrt(1 + abs(a) ** 2) * mpmath.sqrt(1 + abs(b) ** 2))


def criterion_6():
    t = time.perf_counter()
    problem, w = _fixture_witness()
    c = w.certificate
    coarse_ok = c.passes and max(c.err_ii) < 1e-10 and c.err_iii < 1e-3
    # independent oracle: linear-solve Pade at every fine expansion point,
    # high-precision evaluation on fine samples
    L_fine, K_fine = disk_and_segment(1 / 32, 1 / 160)
    pades = {}
    for zf in L_fine.points:
        zeta = from_float(zf)
        P = pade_solve(jet_of_rational(w.f, zeta, sum(c.pq)), *c.pq)
        R = P.rational()
        pades.setdefault((R.num.coeffs, R.den.coeffs), R)
    mpmath.mp.dps = 40
    err_ii = err_iii = mpmath.mpf(0)
    hK = problem.h
    for R in pades.values():
        for z in L_fine.points[::3]:
            zm = _mp(complex(z))
            for ell in range(problem.s + 1):
                err_ii = max(err_ii, abs(_mp_rational(R, zm, ell) - _mp_rational(w.f, zm, ell)))
        for z in K_fine.points:
            zm = _mp(complex(z))
            err_iii = max(err_iii, _mp_chi(_mp_rational(R, zm, 0), _mp_rational(hK, zm, 0)))
    dt = time.perf_counter() - t
    fine_ok = err_ii < 1e-9 and err_iii < 2e-3
    ok = coarse_ok and fine_ok and dt < 120
    return _record(6, ok, f"(p,q)={c.pq}, err_iii={c.err_iii:.3e}, err_ii={max(c.err_ii):.1e}; "
                          f"fine ({len(L_fine)}/{len(K_fine)} pts, {len(pades)} distinct Pade): "
                          f"err_iii={float(err_iii):.3e}, err_ii={float(err_ii):.1e}", dt)


# 7: boundary-split demo through the CLI ------------------------------------------------


def criterion_7(tmp_dir=None):
    import io as _io
    import tempfile
    from contextlib import redirect_stdout

    t = time.perf_counter()
    out_dir = tmp_dir or tempfile.mkdtemp()
    buf = _io.StringIO()
    with redirect_stdout(buf):
        rc = cli.main(["universal", "demo", "boundary-split", "--eps", "1e-3", "--out", str(out_dir)])
    report = json.loads(buf.getvalue())
    dt = time.perf_counter() - t
    ok = (rc == 0 and report["passes"] and report["err_iii"] < 1e-3
          and report["reproduction_error_L"] < 1e-10)
    return _record(7, ok, f"rc={rc}, (p,q)={tuple(report.get('pq', ()))}, euclidean err on K "
                          f"{report.get('err_iii')}, reproduction on L_2 {report.get('reproduction_error_L')}",
                   dt)


# 8: fault injection ----------------------------------------------------------------------


def _fault_problem(rng: random.Random) -> ConstructionProblem:
    a = rng.choice([2.0, 2.5, 3.0])
    L, K = disk_and_segment(1 / 8, 1 / 16, radius=rng.choice([0.25, 0.375, 0.5]), seg=(a, a + 1))
    pole = complex(rng.choice([-1.5, -1.0, 1.25, a + 1.75]), rng.choice([0.0, 0.5, -0.75]))
    g = RationalFunction(Polynomial((rand_gr(rng, 3, 2) or 1,), EXACT),
                         Polynomial((-from_float(pole), 1), EXACT))
    # h stays away from 0 and infinity on K
    beta = complex(rng.choice([0.0, -0.5, 0.25]), rng.choice([0.0, 0.5]))
    h = RationalFunction(Polynomial((from_float(complex(rng.choice([1.0, 2.0, -1.5]))),), EXACT),
                         Polynomial((-from_float(beta), 1), EXACT))
    return ConstructionProblem(L, K, g, h, IndexSetF(rule="all", horizon=120), s=1, eps=1e-3)


def criterion_8():
    t = time.perf_counter()
    rng = random.Random(SEED + 8)
    false_passes, unnamed, cases = 0, 0, 0
    for _ in range(10):
        problem = _fault_problem(rng)
        w = construct_candidate(problem)
        for corrupt in (fault_double_d(w), fault_delete_pole(w)):
            cases += 1
            cert = verify_certificate(corrupt, w.pq, problem.L, problem.K, problem.h, problem.s,
                                      problem.eps, problem.metric)
            false_passes += cert.passes
            unnamed += not cert.violations
    dt = time.perf_counter() - t
    ok = false_passes == 0 and unnamed == 0
    return _record(8, ok, f"{cases} corrupted witnesses from 10 seeded problems: "
                          f"{false_passes} false passes, {unnamed} without a named violation", dt)


# pytest wrappers -------------------------------------------------------------------------


def test_criterion_1_rational_reproduction():
    assert criterion_1()


def test_criterion_2_taylor_match():
    assert criterion_2()


def test_criterion_3_cross_validation():
    assert criterion_3()


def test_criterion_4_chordal_axioms():
    assert criterion_4()


def test_criterion_5_compacta_invariants():
    assert criterion_5()


def test_criterion_6_rational_construction():
    assert criterion_6()


def test_criterion_7_boundary_split_demo(tmp_path):
    assert criterion_7(tmp_path)


def test_criterion_8_fault_injection():
    assert criterion_8()


if __name__ == "__main__":
    results = [fn() for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                               criterion_6, criterion_7, criterion_8)]
    sys.exit(0 if all(results) else 1)
